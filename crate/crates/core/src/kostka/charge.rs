//! Kostka–Foulkes polynomials by the charge statistic on semistandard
//! tableaux, enumerated by brute force.

use crate::error::{KostkaError, Result};
use crate::scalars::{Poly, Q};

/// Largest size accepted by [`kostka_foulkes_charge`].
pub const MAX_CHARGE_SIZE: usize = 6;

fn check_partition(p: &[usize], what: &str) -> Result<()> {
    if p.contains(&0) || p.windows(2).any(|w| w[0] < w[1]) {
        return Err(KostkaError::InvalidInput(format!("{what} {p:?} is not a partition")));
    }
    Ok(())
}

/// Semistandard tableaux of shape `shape` and content `content`, as rows.
pub fn ssyt(shape: &[usize], content: &[usize]) -> Vec<Vec<Vec<usize>>> {
    fn place(
        letter: usize,
        content: &[usize],
        shape: &[usize],
        rows: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if letter == content.len() {
            if rows.iter().map(|r| r.len()).eq(shape.iter().copied()) {
                out.push(rows.clone());
            }
            return;
        }
        // Add a horizontal strip of `content[letter]` copies of the letter.
        fn strip(
            row: usize,
            left: usize,
            letter: usize,
            content: &[usize],
            shape: &[usize],
            rows: &mut Vec<Vec<usize>>,
            out: &mut Vec<Vec<Vec<usize>>>,
        ) {
            if left == 0 {
                place(letter + 1, content, shape, rows, out);
                return;
            }
            if row >= shape.len() {
                return;
            }
            let cur = rows[row].len();
            // Cells with a filled cell above, and not past the row above's
            // length before this letter was added.
            let above = if row == 0 { shape[0] } else { rows[row - 1].iter().filter(|&&x| x != letter + 1).count() };
            let room = shape[row].min(above).saturating_sub(cur);
            for k in (0..=room.min(left)).rev() {
                rows[row].extend(std::iter::repeat_n(letter + 1, k));
                strip(row + 1, left - k, letter, content, shape, rows, out);
                let n = rows[row].len();
                rows[row].truncate(n - k);
            }
        }
        strip(0, content[letter], letter, content, shape, rows, out);
    }
    let mut out = Vec::new();
    let mut rows = vec![Vec::new(); shape.len()];
    place(0, content, shape, &mut rows, &mut out);
    out
}

/// Rows read bottom to top, each left to right.
pub fn reading_word(t: &[Vec<usize>]) -> Vec<usize> {
    t.iter().rev().flatten().copied().collect()
}

/// Charge of a word whose content is a partition.
pub fn charge(word: &[usize]) -> usize {
    let mut w: Vec<Option<usize>> = word.iter().map(|&x| Some(x)).collect();
    let mut total = 0;
    while w.iter().any(Option::is_some) {
        let top = w.iter().flatten().copied().max().unwrap_or(0);
        // Scan leftward, cyclically, for 1, 2, …, top.
        let n = w.len();
        let mut pos = n;
        let mut index = 0;
        for letter in 1..=top {
            let mut wrapped = false;
            let mut p = pos;
            loop {
                if p == 0 {
                    p = n;
                    wrapped = true;
                }
                p -= 1;
                if w[p] == Some(letter) {
                    break;
                }
            }
            if letter > 1 && wrapped {
                index += 1;
            }
            total += index;
            w[p] = None;
            pos = p;
        }
    }
    total
}

/// `K_{λμ}(q) = Σ_T q^{charge(T)}` over tableaux of shape `λ`, content `μ`.
pub fn kostka_foulkes_charge(lambda: &[usize], mu: &[usize]) -> Result<Poly<Q>> {
    check_partition(lambda, "shape")?;
    check_partition(mu, "content")?;
    let (a, b): (usize, usize) = (lambda.iter().sum(), mu.iter().sum());
    if a != b {
        return Err(KostkaError::InvalidInput(format!("sizes differ: |λ| = {a}, |μ| = {b}")));
    }
    if a > MAX_CHARGE_SIZE {
        return Err(KostkaError::InvalidInput(format!("size {a} exceeds the enumeration bound {MAX_CHARGE_SIZE}")));
    }
    let mut coeffs = vec![0i64; a * a + 1];
    for t in ssyt(lambda, mu) {
        coeffs[charge(&reading_word(&t))] += 1;
    }
    Ok(Poly::new(coeffs.into_iter().map(Q::from_int).collect()))
}

/// `n(λ) = Σ (i-1) λ_i`.
pub fn n_statistic(p: &[usize]) -> usize {
    p.iter().enumerate().map(|(i, x)| i * x).sum()
}

pub fn conjugate_partition(p: &[usize]) -> Vec<usize> {
    let w = p.first().copied().unwrap_or(0);
    (1..=w).map(|j| p.iter().filter(|&&x| x >= j).count()).collect()
}
