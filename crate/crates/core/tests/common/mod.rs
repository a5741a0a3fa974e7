//! Brute-force oracles that share no code with the library.

#![allow(dead_code)]

use std::collections::BTreeMap;

/// Semistandard tableaux of shape `shape` with entries in `1..=m`, as
/// content vectors (multiplicity of each entry).
pub fn ssyt_contents(shape: &[usize], m: usize) -> Vec<Vec<usize>> {
    let cells: Vec<(usize, usize)> =
        shape.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&l| vec![0; l]).collect();
    let mut out = Vec::new();
    fill(&cells, 0, m, &mut grid, &mut out);
    out
}

fn fill(cells: &[(usize, usize)], k: usize, m: usize, grid: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<usize>>) {
    if k == cells.len() {
        let mut content = vec![0; m];
        for row in grid.iter() {
            for &x in row {
                content[x - 1] += 1;
            }
        }
        out.push(content);
        return;
    }
    let (r, c) = cells[k];
    let lo_row = if c > 0 { grid[r][c - 1] } else { 1 };
    let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
    for x in lo_row.max(lo_col)..=m {
        grid[r][c] = x;
        fill(cells, k + 1, m, grid, out);
    }
    grid[r][c] = 0;
}

/// `dim V(λ)` for `GL(m)` by counting tableaux after shifting to a partition.
pub fn gl_dim(lam: &[i64], m: usize) -> u64 {
    let mut l = lam.to_vec();
    l.resize(m, 0);
    let low = *l.iter().min().unwrap_or(&0);
    let shape: Vec<usize> = l.iter().map(|&x| (x - low) as usize).filter(|&x| x > 0).collect();
    ssyt_contents(&shape, m).len() as u64
}

/// The Schur polynomial in `m` variables as a map monomial → coefficient.
pub fn schur_poly(shape: &[usize], m: usize) -> BTreeMap<Vec<usize>, i64> {
    let mut out = BTreeMap::new();
    if shape.len() > m {
        return out;
    }
    for c in ssyt_contents(shape, m) {
        *out.entry(c).or_insert(0) += 1;
    }
    out
}

fn poly_mul(a: &BTreeMap<Vec<usize>, i64>, b: &BTreeMap<Vec<usize>, i64>) -> BTreeMap<Vec<usize>, i64> {
    let mut out = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<usize> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `s_λ s_μ = Σ c^ν s_ν` by peeling off leading terms of the product of
/// Schur polynomials in `len(λ)+len(μ)` variables.
pub fn lr_by_polynomials(lam: &[usize], mu: &[usize]) -> BTreeMap<Vec<usize>, i64> {
    let m = lam.len() + mu.len();
    let mut rest = poly_mul(&schur_poly(lam, m), &schur_poly(mu, m));
    let mut out = BTreeMap::new();
    while let Some((lead, &c)) = rest.iter().next_back() {
        // The lex-largest monomial of a symmetric polynomial is a partition.
        let nu: Vec<usize> = lead.clone();
        let shape: Vec<usize> = nu.iter().copied().filter(|&x| x > 0).collect();
        for (e, k) in schur_poly(&shape, m) {
            *rest.entry(e).or_insert(0) -= c * k;
        }
        rest.retain(|_, x| *x != 0);
        out.insert(nu, c);
    }
    out
}

/// Borel–Weil–Bott for a concatenated weight on `GL(n)`: `None` when
/// singular, else the degree and the dimension of the cohomology.
pub fn bwb(weight: &[i64]) -> Option<(usize, u64)> {
    let n = weight.len();
    let mut v: Vec<i64> = weight.iter().enumerate().map(|(i, &x)| x + (n - 1 - i) as i64).collect();
    let mut inversions = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if v[i] == v[j] {
                return None;
            }
            if v[i] < v[j] {
                inversions += 1;
            }
        }
    }
    v.sort_unstable_by(|a, b| b.cmp(a));
    let dominant: Vec<i64> = v.iter().enumerate().map(|(i, &x)| x - (n - 1 - i) as i64).collect();
    Some((inversions, gl_dim(&dominant, n)))
}
