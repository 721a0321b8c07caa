use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::module::{Automorphism, GaloisModule, ModulePoint};
use crate::error::{Error, Result};
use crate::modarith::reduce_signed;

type Matrix = Vec<Vec<i128>>;

fn identity(k: usize) -> Matrix {
    (0..k)
        .map(|i| (0..k).map(|j| (i == j) as i128).collect())
        .collect()
}

/// Smith reduction `P·R·Q = diag`, tracking only the column transform `Q` and
/// its inverse.
struct Smith {
    diag: Vec<i128>,
    q: Matrix,
    q_inv: Matrix,
}

struct Reducer {
    a: Matrix,
    q: Matrix,
    q_inv: Matrix,
    cols: usize,
}

impl Reducer {
    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut().chain(self.q.iter_mut()) {
            row.swap(i, j);
        }
        self.q_inv.swap(i, j);
    }

    /// col_j -= c · col_t
    fn sub_col(&mut self, j: usize, t: usize, c: i128) {
        if c == 0 {
            return;
        }
        for row in self.a.iter_mut().chain(self.q.iter_mut()) {
            row[j] -= c * row[t];
        }
        // inverse op on rows: row_t += c · row_j
        for l in 0..self.cols {
            let v = self.q_inv[j][l];
            self.q_inv[t][l] += c * v;
        }
    }

    fn sub_row(&mut self, i: usize, t: usize, c: i128) {
        if c == 0 {
            return;
        }
        for l in 0..self.cols {
            let v = self.a[t][l];
            self.a[i][l] -= c * v;
        }
    }

    fn min_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.len() {
            for j in t..self.cols {
                let v = self.a[i][j].abs();
                if v != 0 && best.is_none_or(|(bi, bj)| v < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn run(mut self) -> Smith {
        let rows = self.a.len();
        let k = self.cols;
        let mut diag = Vec::new();
        for t in 0..rows.min(k) {
            let Some((pi, pj)) = self.min_nonzero(t) else {
                break;
            };
            self.a.swap(t, pi);
            self.swap_cols(t, pj);
            loop {
                let p = self.a[t][t];
                let mut clean = true;
                for i in t + 1..rows {
                    let c = self.a[i][t].div_euclid(p);
                    self.sub_row(i, t, c);
                    clean &= self.a[i][t] == 0;
                }
                for j in t + 1..k {
                    let c = self.a[t][j].div_euclid(p);
                    self.sub_col(j, t, c);
                    clean &= self.a[t][j] == 0;
                }
                if !clean {
                    // move the smallest remainder in row t / column t to the pivot
                    let mut best = (t, t);
                    for i in t + 1..rows {
                        let v = self.a[i][t].abs();
                        if v != 0 && v < self.a[best.0][best.1].abs() {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..k {
                        let v = self.a[t][j].abs();
                        if v != 0 && v < self.a[best.0][best.1].abs() {
                            best = (t, j);
                        }
                    }
                    self.a.swap(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                let bad = (t + 1..rows).find(|&i| (t + 1..k).any(|j| self.a[i][j] % p != 0));
                match bad {
                    Some(i) => {
                        // row_t += row_i, then reduce again
                        self.sub_row(t, i, -1);
                    }
                    None => break,
                }
            }
            diag.push(self.a[t][t].abs());
        }
        Smith {
            diag,
            q: self.q,
            q_inv: self.q_inv,
        }
    }
}

fn smith(relations: Matrix, k: usize) -> Smith {
    Reducer {
        a: relations,
        q: identity(k),
        q_inv: identity(k),
        cols: k,
    }
    .run()
}

/// A quotient module together with the projection from the original
/// coordinates.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub module: GaloisModule,
    /// Rows of the projection, one per kept coordinate.
    projection: Matrix,
    /// Columns of the section, one per kept coordinate.
    section: Matrix,
}

impl Quotient {
    /// Image of a point of the original module.
    pub fn project(&self, p: &ModulePoint) -> ModulePoint {
        let coords: Vec<u64> = self
            .projection
            .iter()
            .zip(self.module.factors())
            .map(|(row, &d)| {
                let acc: i128 = row
                    .iter()
                    .zip(p.coords())
                    .map(|(&a, &c)| a * c as i128)
                    .sum();
                reduce_signed(acc, d)
            })
            .collect();
        ModulePoint(coords)
    }

    /// A preimage of `q` in the original coordinates, unreduced.
    pub fn lift(&self, q: &ModulePoint) -> Vec<i128> {
        let k = self.section.first().map_or(0, |c| c.len());
        let mut out = vec![0i128; k];
        for (col, &c) in self.section.iter().zip(q.coords()) {
            for (o, &v) in out.iter_mut().zip(col) {
                *o += v * c as i128;
            }
        }
        out
    }
}

/// Quotient of `module` by the subgroup generated by `sub`.
///
/// The quotient group is brought to invariant-factor form by Smith reduction
/// of the relation lattice `{dᵢ eᵢ} ∪ sub`, and the action is conjugated into
/// the new basis. Fails if the subgroup is not stable under the Galois image.
pub fn quotient_by(module: &GaloisModule, sub: &[ModulePoint]) -> Result<Quotient> {
    let k = module.rank();
    if let Some(p) = sub.iter().find(|p| p.coords().len() != k) {
        return Err(Error::InvalidModule(format!(
            "subgroup generator has {} coordinates, module has rank {k}",
            p.coords().len()
        )));
    }
    let h: BTreeSet<ModulePoint> = module.subgroup_generated(sub)?.into_iter().collect();
    for (g, sigma) in module.generators().iter().enumerate() {
        if sub.iter().any(|s| !h.contains(&module.apply(sigma, s))) {
            return Err(Error::UnstableSubgroup { automorphism: g });
        }
    }

    let d = module.factors();
    let mut relations: Matrix = (0..k)
        .map(|i| {
            let mut row = vec![0i128; k];
            row[i] = d[i] as i128;
            row
        })
        .collect();
    relations.extend(
        sub.iter()
            .map(|p| p.coords().iter().map(|&c| c as i128).collect()),
    );
    let snf = smith(relations, k);

    let mut kept: Vec<usize> = (0..k).filter(|&t| snf.diag[t] > 1).collect();
    if kept.is_empty() {
        kept.push(k - 1);
    }
    let factors: Vec<u64> = kept.iter().map(|&t| snf.diag[t] as u64).collect();
    // y = Qᵀ x, x = Q⁻ᵀ y
    let projection: Matrix = kept
        .iter()
        .map(|&t| (0..k).map(|j| snf.q[j][t]).collect())
        .collect();
    let section: Matrix = kept.iter().map(|&t| snf.q_inv[t].clone()).collect();

    let generators = module
        .generators()
        .iter()
        .map(|a| induced(a, &projection, &section, &factors))
        .collect();
    let name = {
        let parts: Vec<String> = sub
            .iter()
            .map(|p| {
                let c: Vec<String> = p.coords().iter().map(|c| format!("{c}")).collect();
                format!("({})", c.join(","))
            })
            .collect();
        format!("{}/<{}>", module.label(), parts.join(","))
    };
    let quotient = GaloisModule::from_generators(Some(name), factors, generators, module.limits())?;
    Ok(Quotient {
        module: quotient,
        projection,
        section,
    })
}

/// `P · A · S` restricted to the kept coordinates, rows reduced.
fn induced(
    a: &Automorphism,
    projection: &Matrix,
    section: &Matrix,
    factors: &[u64],
) -> Automorphism {
    let r = factors.len();
    let k = a.dim();
    let mut entries = Vec::with_capacity(r * r);
    for (i, prow) in projection.iter().enumerate() {
        for scol in section {
            // A · s
            let mut acc: i128 = 0;
            for (l, &pl) in prow.iter().enumerate() {
                if pl == 0 {
                    continue;
                }
                let a_s: i128 = (0..k).map(|m| a.entry(l, m) as i128 * scol[m]).sum();
                acc += pl * a_s;
            }
            entries.push(reduce_signed(acc, factors[i]));
        }
    }
    Automorphism::from_entries(r, entries)
}
