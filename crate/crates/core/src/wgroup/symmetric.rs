//! Symmetric groups: the reflection representation and characters by the
//! Murnaghan–Nakayama rule.

use std::collections::HashMap;

use super::{generate_group, CharacterTable, ReflectionGroup, DEFAULT_BOUND};
use crate::error::{KostkaError, Result};
use crate::linalg::Mat;
use crate::scalars::{Cyclo, Ring};

/// Weakly decreasing positive parts.
pub type Partition = Vec<usize>;

pub const MAX_TABLE_RANK: usize = 8;
pub const MAX_GROUP_RANK: usize = 5;

/// Partitions of `n` in lexicographically increasing order, so `(1^n)`
/// comes first and `(n)` last.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, cur: &mut Partition, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out.reverse();
    out
}

pub fn partition_label(p: &[usize]) -> String {
    let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Parse `(2,1)`, `2,1` or `21` (single-digit parts).
pub fn parse_partition(s: &str) -> Option<Partition> {
    let t = s.trim().trim_start_matches('(').trim_end_matches(')');
    let mut p: Partition = if t.contains(',') {
        t.split(',').map(|x| x.trim().parse().ok()).collect::<Option<_>>()?
    } else {
        t.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>()?
    };
    if p.is_empty() || p.contains(&0) || p.windows(2).any(|w| w[0] < w[1]) {
        return None;
    }
    p.shrink_to_fit();
    Some(p)
}

/// `χ_λ(μ)` by removing rim hooks of length `μ_1, μ_2, …` from the beta-set
/// of `λ`.
fn mn_value(beta: &[usize], mu: &[usize], memo: &mut HashMap<(Vec<usize>, Vec<usize>), i64>) -> i64 {
    let Some((&r, rest)) = mu.split_first() else {
        return 1;
    };
    let key = (beta.to_vec(), mu.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b - r && x < b).count();
        let mut next = beta.to_vec();
        next[i] = b - r;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let v = mn_value(&next, rest, memo);
        total += if between % 2 == 0 { v } else { -v };
    }
    memo.insert(key, total);
    total
}

fn beta_set(lambda: &[usize]) -> Vec<usize> {
    let l = lambda.len();
    lambda.iter().enumerate().map(|(i, &x)| x + l - 1 - i).collect()
}

/// `χ_λ` evaluated on the class of cycle type `μ`.
pub fn sn_character_value(lambda: &[usize], mu: &[usize]) -> i64 {
    mn_value(&beta_set(lambda), mu, &mut HashMap::new())
}

/// Character table of `S_n`, rows and columns both labelled by partitions
/// in lexicographically increasing order.
pub fn sn_character_table(n: usize) -> Result<CharacterTable> {
    if !(1..=MAX_TABLE_RANK).contains(&n) {
        return Err(KostkaError::UnsupportedRank(format!("S_{n}: character tables are built in for 1 <= n <= {MAX_TABLE_RANK}")));
    }
    let parts = partitions(n);
    // Column 0 must be the identity class, cycle type (1^n).
    let labels: Vec<String> = parts.iter().map(|p| partition_label(p)).collect();
    let values = parts
        .iter()
        .map(|lam| {
            let beta = beta_set(lam);
            let mut memo = HashMap::new();
            parts.iter().map(|mu| Cyclo::from_int(mn_value(&beta, mu, &mut memo))).collect()
        })
        .collect();
    Ok(CharacterTable::new(labels.clone(), labels, values))
}

/// `S_n` acting on `{x ∈ Q^n : Σ x = 0}` in the basis `e_i - e_n`,
/// generated by the adjacent transpositions.
pub fn symmetric_group(n: usize) -> Result<ReflectionGroup> {
    if !(2..=MAX_GROUP_RANK).contains(&n) {
        return Err(KostkaError::UnsupportedRank(format!("S_{n}: built-in groups cover 2 <= n <= {MAX_GROUP_RANK}")));
    }
    let d = n - 1;
    let gens = (0..n - 1)
        .map(|i| {
            let mut sigma: Vec<usize> = (0..n).collect();
            sigma.swap(i, i + 1);
            let mut m = Mat::<Cyclo>::zeros(d, d);
            for j in 0..d {
                if sigma[j] < d {
                    m[(sigma[j], j)] = m[(sigma[j], j)].radd(&Cyclo::one());
                }
                if sigma[n - 1] < d {
                    m[(sigma[n - 1], j)] = m[(sigma[n - 1], j)].rsub(&Cyclo::one());
                }
            }
            m
        })
        .collect();
    Ok(generate_group(d, gens, DEFAULT_BOUND)?.with_name(format!("S{n}")))
}

/// Cycle type from fixed-point counts of powers (Möbius inversion).
fn cycle_type(g: &ReflectionGroup, w: usize, n: usize) -> Partition {
    let mut fixed = vec![0i64; n + 1];
    let mut x = w;
    for f in fixed.iter_mut().skip(1) {
        let tr = g.matrix(x).trace();
        *f = tr.as_rational().and_then(|q| q.to_i64()).expect("integral trace") + 1;
        x = g.mul(x, w);
    }
    let mut counts = vec![0i64; n + 1];
    for j in 1..=n {
        // j * c_j = f_j - Σ_{d | j, d < j} d * c_d
        let mut s = fixed[j];
        for d in 1..j {
            if j % d == 0 {
                s -= d as i64 * counts[d];
            }
        }
        counts[j] = s / j as i64;
    }
    let mut p = Vec::new();
    for j in (1..=n).rev() {
        for _ in 0..counts[j] {
            p.push(j);
        }
    }
    p
}

/// The `S_n` table with columns rearranged to the classes of `g`.
pub fn table_for_group(g: &ReflectionGroup, n: usize) -> Result<CharacterTable> {
    let t = sn_character_table(n)?;
    let parts = partitions(n);
    let perm: Vec<usize> = g
        .classes()
        .iter()
        .map(|c| {
            let ct = cycle_type(g, c.rep, n);
            parts.iter().position(|p| *p == ct).expect("cycle type is a partition")
        })
        .collect();
    Ok(t.permute_columns(&perm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wgroup::validate_character_table;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=8).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(partitions(3), vec![vec![1, 1, 1], vec![2, 1], vec![3]]);
        assert_eq!(parse_partition("(2,1)"), Some(vec![2, 1]));
        assert_eq!(parse_partition("211"), Some(vec![2, 1, 1]));
        assert_eq!(parse_partition("12"), None);
    }

    #[test]
    fn small_values() {
        assert_eq!(sn_character_value(&[1, 1], &[2]), -1);
        assert_eq!(sn_character_value(&[2, 1], &[1, 1, 1]), 2);
        assert_eq!(sn_character_value(&[2, 1], &[3]), -1);
        assert_eq!(sn_character_value(&[2, 1], &[2, 1]), 0);
        assert_eq!(sn_character_value(&[3, 2, 1], &[1; 6]), 16);
        assert!(matches!(sn_character_table(9), Err(KostkaError::UnsupportedRank(_))));
        assert!(matches!(sn_character_table(0), Err(KostkaError::UnsupportedRank(_))));
    }

    /// Row orthogonality with class sizes `n! / z_μ`.
    #[test]
    fn tables_are_orthonormal_up_to_eight() {
        fn z(mu: &[usize]) -> i64 {
            let mut z = 1i64;
            let mut i = 0;
            while i < mu.len() {
                let j = mu[i..].iter().take_while(|&&x| x == mu[i]).count();
                z *= (mu[i] as i64).pow(j as u32) * (1..=j as i64).product::<i64>();
                i += j;
            }
            z
        }
        for n in 1..=8 {
            let parts = partitions(n);
            let t = sn_character_table(n).unwrap();
            for a in 0..t.len() {
                for b in 0..t.len() {
                    let mut num = crate::scalars::Q::ZERO;
                    for (c, mu) in parts.iter().enumerate() {
                        let x = t.value(a, c).as_rational().unwrap() * t.value(b, c).as_rational().unwrap();
                        num = &num + &(&x / &crate::scalars::Q::from_int(z(mu)));
                    }
                    assert_eq!(num, crate::scalars::Q::from_int((a == b) as i64), "n={n} rows {a},{b}");
                }
            }
        }
    }

    #[test]
    fn group_tables_validate() {
        for n in 2..=5 {
            let g = symmetric_group(n).unwrap();
            assert_eq!(g.order(), (1..=n).product::<usize>());
            let t = table_for_group(&g, n).unwrap();
            assert!(validate_character_table(&g, &t).passed(), "S{n}");
            let sgn = t.resolve(&g, "sgn").unwrap();
            assert_eq!(t.name(sgn), partition_label(&vec![1; n]));
            assert_eq!(t.name(t.trivial().unwrap()), partition_label(&[n]));
            assert!(t.row(sgn).iter().all(|v| v.rmul(v).is_one()));
        }
    }
}
