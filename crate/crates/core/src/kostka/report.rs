//! The report document and its JSON, CSV and text renderings.

use std::fmt::Write as _;

use serde::{Serialize, Serializer};

use super::ldl::{conjugate_indices, is_hermitian, ldl_consistency, ldl_reconstructs, Blocks};
use super::oracle::OracleReport;
use super::series::SeriesMat;
use super::Filtration;
use crate::amod::HomCheck;
use crate::error::{KostkaError, Result};
use crate::linalg::Mat;
use crate::scalars::{Poly, QSeries, RatFun, Q};

/// Outcome of every mathematical check; all should hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flags {
    /// `m_{χψ} ≠ 0 ⇒ ψ ≾ χ`
    pub m_support: bool,
    /// `m_{χχ} = 1`
    pub m_diagonal: bool,
    /// `m` vanishes in the top `buffer` grades.
    pub m_polynomial: bool,
    /// `n_{χψ} ≠ 0 ⇒ ψ ∼ χ`
    pub n_support: bool,
    /// `n_{χχ}(0) = 1`
    pub n_diagonal: bool,
    /// Coefficients of `m`, `n`, `K` are nonnegative integers.
    pub positivity: bool,
    /// `m·n` equals the direct expansion of `P` in the `∇̄` basis.
    pub k_product: bool,
    pub lambda_block_diagonal: bool,
    /// `Λ^‡ = Λ`
    pub lambda_hermitian: bool,
    /// `K·Λ·K^‡ = Ω^T`
    pub reconstruction: bool,
    /// `L·D·L^‡ = Ω` as rational functions.
    pub ldl_exact: bool,
    /// `L_{B'B} = K_{B'B}·K_{BB}^{-1}` after conjugating the indices of `L`.
    pub ldl_consistency: bool,
    /// `Ω_{χψ} = Ω_{ψ̄χ̄}`
    pub omega_duality: bool,
}

fn nonneg_int(s: &QSeries<Q>) -> bool {
    s.coeffs().iter().all(|c| c.is_integer() && !c.is_negative())
}

impl Flags {
    #[allow(clippy::too_many_arguments)]
    pub(super) fn compute(
        f: &Filtration,
        lambda: &SeriesMat,
        block_diagonal: bool,
        omega: &Mat<RatFun>,
        graded_proj: &SeriesMat,
        l: &Mat<RatFun>,
        d: &Mat<RatFun>,
        blocks: &Blocks,
        buffer: usize,
    ) -> Result<Flags> {
        let n = blocks.len();
        let t = f.m.trunc();
        let ph = |a: usize| blocks.block_of(a);
        let pairs = || (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)));
        let top_from = (t + 1).saturating_sub(buffer);
        let kd = f.k.dagger(&blocks.bar);
        Ok(Flags {
            m_support: pairs().all(|(a, b)| ph(b) <= ph(a) || f.m.get(a, b).is_zero()),
            m_diagonal: (0..n).all(|a| *f.m.get(a, a) == QSeries::one(t)),
            m_polynomial: pairs().all(|(a, b)| (top_from..=t).all(|k| f.m.get(a, b).coeff(k).is_zero())),
            n_support: pairs().all(|(a, b)| ph(b) == ph(a) || f.n.get(a, b).is_zero()),
            n_diagonal: (0..n).all(|a| f.n.get(a, a).coeff(0).is_one()),
            positivity: pairs().all(|(a, b)| nonneg_int(f.m.get(a, b)) && nonneg_int(f.n.get(a, b)) && nonneg_int(f.k.get(a, b))),
            k_product: f.k == f.k_direct,
            lambda_block_diagonal: block_diagonal,
            lambda_hermitian: lambda.dagger(&blocks.bar) == *lambda,
            reconstruction: f.k.mul(lambda).mul(&kd) == *graded_proj,
            ldl_exact: ldl_reconstructs(l, d, omega, &blocks.bar),
            ldl_consistency: ldl_consistency(&conjugate_indices(l, &blocks.bar), &f.k, blocks)?,
            omega_duality: is_hermitian(omega, &blocks.bar),
        })
    }

    fn entries(&self) -> [(&'static str, bool); 13] {
        [
            ("m_support", self.m_support),
            ("m_diagonal", self.m_diagonal),
            ("m_polynomial", self.m_polynomial),
            ("n_support", self.n_support),
            ("n_diagonal", self.n_diagonal),
            ("positivity", self.positivity),
            ("k_product", self.k_product),
            ("lambda_block_diagonal", self.lambda_block_diagonal),
            ("lambda_hermitian", self.lambda_hermitian),
            ("reconstruction", self.reconstruction),
            ("ldl_exact", self.ldl_exact),
            ("ldl_consistency", self.ldl_consistency),
            ("omega_duality", self.omega_duality),
        ]
    }

    pub fn all(&self) -> bool {
        self.entries().iter().all(|e| e.1)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.entries().iter().filter(|e| !e.1).map(|e| e.0).collect()
    }
}

fn ser_polys<S: Serializer>(m: &[Vec<Poly<Q>>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strings: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect();
    strings.serialize(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct KostkaReport {
    pub group: String,
    /// Phyla from minimal to maximal.
    pub preorder: Vec<Vec<String>>,
    /// Row and column labels of every matrix below.
    pub ordering: Vec<String>,
    pub trunc: usize,
    pub buffer: usize,
    pub field: String,
    #[serde(rename = "Omega")]
    pub omega: Vec<Vec<RatFun>>,
    #[serde(rename = "L")]
    pub l: Vec<Vec<RatFun>>,
    #[serde(rename = "D")]
    pub d: Vec<Vec<RatFun>>,
    #[serde(serialize_with = "ser_polys")]
    pub m: Vec<Vec<Poly<Q>>>,
    pub n: SeriesMat,
    #[serde(rename = "K")]
    pub k: SeriesMat,
    #[serde(rename = "Lambda")]
    pub lambda: SeriesMat,
    pub flags: Flags,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hom_checks: Option<Vec<HomCheck>>,
}

pub const MATRIX_NAMES: [&str; 7] = ["Omega", "L", "D", "m", "n", "K", "Lambda"];

impl KostkaReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// True iff every flag holds and the oracle, when present, passed.
    pub fn passed(&self) -> bool {
        self.flags.all() && self.oracle.as_ref().is_none_or(|o| o.passed)
    }

    /// Entries of one matrix as display strings.
    pub fn matrix(&self, name: &str) -> Result<Vec<Vec<String>>> {
        let rf = |m: &[Vec<RatFun>]| m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        let sm = |m: &SeriesMat| m.map_entries(|s| s.to_string());
        Ok(match name {
            "Omega" => rf(&self.omega),
            "L" => rf(&self.l),
            "D" => rf(&self.d),
            "m" => self.m.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect(),
            "n" => sm(&self.n),
            "K" => sm(&self.k),
            "Lambda" => sm(&self.lambda),
            _ => {
                return Err(KostkaError::InvalidInput(format!(
                    "unknown matrix {name:?}; choose one of {}",
                    MATRIX_NAMES.join(", ")
                )))
            }
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "group {}  field {}  trunc {}  buffer {}", self.group, self.field, self.trunc, self.buffer);
        let phyla: Vec<String> = self.preorder.iter().map(|p| format!("{{{}}}", p.join(", "))).collect();
        let _ = writeln!(s, "preorder {}", phyla.join(" < "));
        for name in MATRIX_NAMES {
            let _ = writeln!(s, "\n{name}");
            s.push_str(&render_text(&self.ordering, &self.matrix(name).expect("known name")));
        }
        let _ = writeln!(s, "\nflags");
        for (k, v) in self.flags.entries() {
            let _ = writeln!(s, "  {k:<22} {}", if v { "ok" } else { "FAILED" });
        }
        if let Some(o) = &self.oracle {
            let names: Vec<&str> = o.consistent_on_s2.iter().map(|n| n.name()).collect();
            let _ = writeln!(
                s,
                "\noracle  normalization {} (consistent on S2: {})  checked {}  {}",
                o.normalization.name(),
                names.join(", "),
                o.entries_checked,
                if o.passed { "ok" } else { "FAILED" }
            );
            for m in &o.mismatches {
                let _ = writeln!(s, "  {m}");
            }
        }
        if let Some(h) = &self.hom_checks {
            let _ = writeln!(s, "\nhom checks");
            for c in h {
                let _ = writeln!(
                    s,
                    "  {:<32} {} -> {}  {:?}  {}",
                    c.rule.name(),
                    c.source,
                    c.target,
                    c.dims,
                    if c.passed { "ok" } else { "FAILED" }
                );
            }
        }
        s
    }
}

/// Aligned table with row and column labels.
pub fn render_text(labels: &[String], entries: &[Vec<String>]) -> String {
    let lw = labels.iter().map(|l| l.chars().count()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..labels.len())
        .map(|j| entries.iter().map(|r| r[j].chars().count()).chain([labels[j].chars().count()]).max().unwrap_or(0))
        .collect();
    let mut s = String::new();
    let _ = write!(s, "{:lw$}", "");
    for (j, l) in labels.iter().enumerate() {
        let _ = write!(s, "  {l:<w$}", w = widths[j]);
    }
    s.push('\n');
    for (i, r) in entries.iter().enumerate() {
        let _ = write!(s, "{:<lw$}", labels[i]);
        for (j, e) in r.iter().enumerate() {
            let _ = write!(s, "  {e:<w$}", w = widths[j]);
        }
        s.push('\n');
    }
    s
}

/// CSV with a header row of labels and one labelled row per entry row.
pub fn render_csv(labels: &[String], entries: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec![String::new()];
    header.extend(labels.iter().cloned());
    w.write_record(&header).expect("in-memory write");
    for (l, r) in labels.iter().zip(entries) {
        let mut row = vec![l.clone()];
        row.extend(r.iter().cloned());
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}
