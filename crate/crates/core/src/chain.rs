//! Torsion of finite chain complexes with prescribed homology bases.
//!
//! A complex is graded `C_m -> ... -> C_1 -> C_0` with the standard
//! coordinate basis preferred in each degree. The torsion is the
//! alternating product of change-of-basis determinants
//! `det(d_{q+1}(b_{q+1}), z_q, b_q / c_q)` with exponent `(-1)^q`, `q`
//! starting at 0. The sign class is discarded: every result is the log of
//! the absolute value, with exact determinants exposed alongside.

use crate::error::ChainError;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Graded ranks plus boundary matrices; `boundary(q)` maps `C_q -> C_{q-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex<S> {
    ranks: Vec<usize>,
    boundaries: Vec<Matrix<S>>,
}

/// Per-degree cycle matrices whose columns project to the chosen homology
/// basis; degree `q` holds an `n_q x r_q` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct HomologyBasis<S> {
    pub cycles: Vec<Matrix<S>>,
}

/// Torsion magnitude carried as a real logarithm.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct LogTorsion {
    pub value: f64,
}

/// Torsion with the per-degree determinants kept exact.
#[derive(Clone, Debug)]
pub struct TorsionValue<S> {
    /// `det(d(b), z, b / c)` at each degree.
    pub dets: Vec<S>,
    /// `|prod dets^{(-1)^q}|` in the scalar field.
    pub tau_abs: S,
    pub log: LogTorsion,
}

/// A graded map of complexes; `mats[q]` is the degree-`q` block.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap<S> {
    pub mats: Vec<Matrix<S>>,
}

impl<S: Scalar> ChainComplex<S> {
    /// Checks dimensions only; `validate` checks the chain condition.
    pub fn new(ranks: Vec<usize>, boundaries: Vec<Matrix<S>>) -> Result<Self, ChainError> {
        let m = ranks.len().saturating_sub(1);
        if boundaries.len() != m {
            return Err(ChainError::DimensionMismatch {
                q: boundaries.len(),
                rows: 0,
                cols: 0,
                expected_rows: 0,
                expected_cols: 0,
            });
        }
        for q in 1..=m {
            let b = &boundaries[q - 1];
            if b.rows() != ranks[q - 1] || b.cols() != ranks[q] {
                return Err(ChainError::DimensionMismatch {
                    q,
                    rows: b.rows(),
                    cols: b.cols(),
                    expected_rows: ranks[q - 1],
                    expected_cols: ranks[q],
                });
            }
        }
        Ok(ChainComplex { ranks, boundaries })
    }

    /// Top degree `m`.
    pub fn length(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, q: usize) -> usize {
        self.ranks.get(q).copied().unwrap_or(0)
    }

    /// `d_q` for `1 <= q <= m`; zero-shaped matrices outside that range.
    pub fn boundary(&self, q: usize) -> Matrix<S> {
        if q >= 1 && q <= self.length() {
            self.boundaries[q - 1].clone()
        } else if q == 0 {
            Matrix::zero(0, self.rank(0))
        } else {
            Matrix::zero(self.rank(self.length()), 0)
        }
    }

    /// `d_q . d_{q+1} = 0` for every degree; reports the first violation.
    pub fn validate(&self) -> Result<(), ChainError> {
        for q in 1..self.length() {
            let prod = self.boundaries[q - 1].mul(&self.boundaries[q]);
            if !prod.is_zero() {
                return Err(ChainError::ChainCondition { q });
            }
        }
        Ok(())
    }

    /// `rank H_q = rank C_q - rank d_q - rank d_{q+1}` by exact ranks.
    pub fn betti(&self) -> Vec<usize> {
        let m = self.length();
        let ranks_d: Vec<usize> = (0..=m + 1).map(|q| self.boundary(q).rank()).collect();
        (0..=m).map(|q| self.rank(q) - ranks_d[q] - ranks_d[q + 1]).collect()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let m = self.length().max(other.length());
        let ranks: Vec<usize> = (0..=m).map(|q| self.rank(q) + other.rank(q)).collect();
        let boundaries = (1..=m)
            .map(|q| {
                let a = self.boundary(q);
                let b = other.boundary(q);
                let mut out = Matrix::zero(a.rows() + b.rows(), a.cols() + b.cols());
                for i in 0..a.rows() {
                    for j in 0..a.cols() {
                        out.set(i, j, a.get(i, j).clone());
                    }
                }
                for i in 0..b.rows() {
                    for j in 0..b.cols() {
                        out.set(a.rows() + i, a.cols() + j, b.get(i, j).clone());
                    }
                }
                out
            })
            .collect();
        ChainComplex { ranks, boundaries }
    }

    /// Mapping cylinder of the identity: `C_q + C_{q-1} + C_q` with the
    /// block boundary `[[d, 1, 0], [0, -d, 0], [0, -1, d]]`. Also returns
    /// the inclusion onto the first summand.
    pub fn mapping_cylinder(&self) -> (Self, ChainMap<S>) {
        let m = self.length();
        let cyl_len = m + 1;
        let r = |q: isize| -> usize {
            if q < 0 {
                0
            } else {
                self.rank(q as usize)
            }
        };
        let ranks: Vec<usize> =
            (0..=cyl_len as isize).map(|q| r(q) + r(q - 1) + r(q)).collect();
        let mut boundaries = Vec::new();
        for q in 1..=cyl_len {
            let qi = q as isize;
            let (n1, n2, n3) = (r(qi), r(qi - 1), r(qi));
            let (t1, t2, t3) = (r(qi - 1), r(qi - 2), r(qi - 1));
            let d_q = self.boundary(q);
            let d_qm1 = self.boundary(q - 1);
            let mut b = Matrix::zero(t1 + t2 + t3, n1 + n2 + n3);
            // block (1,1) = d_q, block (3,3) = d_q
            for i in 0..d_q.rows() {
                for j in 0..d_q.cols() {
                    b.set(i, j, d_q.get(i, j).clone());
                    b.set(t1 + t2 + i, n1 + n2 + j, d_q.get(i, j).clone());
                }
            }
            // block (1,2) = identity, block (3,2) = -identity
            for k in 0..n2 {
                b.set(k, n1 + k, S::one());
                b.set(t1 + t2 + k, n1 + k, S::one().neg());
            }
            // block (2,2) = -d_{q-1}
            for i in 0..d_qm1.rows() {
                for j in 0..d_qm1.cols() {
                    b.set(t1 + i, n1 + j, d_qm1.get(i, j).neg());
                }
            }
            boundaries.push(b);
        }
        let cyl = ChainComplex { ranks, boundaries };
        let incl = ChainMap {
            mats: (0..=cyl_len)
                .map(|q| {
                    let qi = q as isize;
                    let (n1, n2, n3) = (r(qi), r(qi - 1), r(qi));
                    let mut f = Matrix::zero(n1 + n2 + n3, r(qi));
                    for k in 0..r(qi) {
                        f.set(k, k, S::one());
                    }
                    f
                })
                .collect(),
        };
        (cyl, incl)
    }

    /// Ranks reversed, boundaries transposed, grading `q -> m - q`.
    pub fn dual(&self) -> Self {
        let m = self.length();
        let ranks: Vec<usize> = (0..=m).map(|q| self.rank(m - q)).collect();
        let boundaries: Vec<Matrix<S>> =
            (1..=m).map(|q| self.boundary(m - q + 1).transpose()).collect();
        ChainComplex { ranks, boundaries }
    }
}

impl<S: Scalar> HomologyBasis<S> {
    pub fn empty(c: &ChainComplex<S>) -> Self {
        HomologyBasis {
            cycles: (0..=c.length()).map(|q| Matrix::zero(c.rank(q), 0)).collect(),
        }
    }

    pub fn new(cycles: Vec<Matrix<S>>) -> Self {
        HomologyBasis { cycles }
    }

    pub fn rank(&self, q: usize) -> usize {
        self.cycles.get(q).map_or(0, |m| m.cols())
    }

    /// Each column a cycle, independent modulo the boundaries, with the
    /// per-degree count matching the betti number.
    pub fn validate(&self, c: &ChainComplex<S>) -> Result<(), ChainError> {
        let betti = c.betti();
        for q in 0..=c.length() {
            let z = &self.cycles[q];
            let dz = c.boundary(q).mul(z);
            for col in 0..z.cols() {
                if (0..dz.rows()).any(|i| !dz.get(i, col).is_zero()) {
                    return Err(ChainError::NotACycle { q, col });
                }
            }
            if z.cols() != betti[q] {
                return Err(ChainError::HomologyRankMismatch {
                    q,
                    given: z.cols(),
                    actual: betti[q],
                });
            }
            let b = c.boundary(q + 1);
            let rank_b = b.rank();
            if z.hstack(&b).rank() != z.cols() + rank_b {
                return Err(ChainError::DependentHomology { q });
            }
        }
        Ok(())
    }

    /// Coordinates of the class `[v]` in this basis at degree `q`.
    pub fn class_coordinates(
        &self,
        c: &ChainComplex<S>,
        q: usize,
        v: &Matrix<S>,
    ) -> Option<Matrix<S>> {
        let z = &self.cycles[q];
        let b = c.boundary(q + 1);
        let x = z.hstack(&b).solve(v)?;
        let mut out = Matrix::zero(z.cols(), v.cols());
        for i in 0..z.cols() {
            for j in 0..v.cols() {
                out.set(i, j, x.get(i, j).clone());
            }
        }
        Some(out)
    }
}

/// Default `b`-set at degree `q`: standard basis vectors at the pivot
/// columns of the exact row reduction of `d_q`, lowest indices first.
pub fn default_b_set<S: Scalar>(c: &ChainComplex<S>, q: usize) -> Matrix<S> {
    let d = c.boundary(q);
    let pivots = d.pivot_columns();
    let mut b = Matrix::zero(c.rank(q), pivots.len());
    for (jj, &j) in pivots.iter().enumerate() {
        b.set(j, jj, S::one());
    }
    b
}

/// Torsion of `c` with homology basis `h`; `b_sets` optional per-degree
/// independent sets with nontrivial boundary image.
pub fn torsion<S: Scalar>(
    c: &ChainComplex<S>,
    h: &HomologyBasis<S>,
    b_sets: Option<&[Matrix<S>]>,
) -> Result<TorsionValue<S>, ChainError> {
    c.validate()?;
    h.validate(c)?;
    let m = c.length();
    let bs: Vec<Matrix<S>> = match b_sets {
        Some(bs) => {
            for (q, b) in bs.iter().enumerate() {
                let db = c.boundary(q).mul(b);
                if db.rank() != b.cols() {
                    return Err(ChainError::DegenerateBSet { q });
                }
            }
            bs.to_vec()
        }
        None => (0..=m).map(|q| default_b_set(c, q)).collect(),
    };
    let mut dets = Vec::with_capacity(m + 1);
    for q in 0..=m {
        let db_next = if q + 1 <= m {
            c.boundary(q + 1).mul(&bs[q + 1])
        } else {
            Matrix::zero(c.rank(q), 0)
        };
        let basis = db_next.hstack(&h.cycles[q]).hstack(&bs[q]);
        if basis.rows() != basis.cols() {
            return Err(ChainError::InconsistentBases { q });
        }
        let det = basis.det();
        if det.is_zero() && basis.rows() > 0 {
            return Err(ChainError::InconsistentBases { q });
        }
        dets.push(det);
    }
    Ok(assemble(dets))
}

fn assemble<S: Scalar>(dets: Vec<S>) -> TorsionValue<S> {
    let mut tau = S::one();
    let mut log = 0.0;
    for (q, d) in dets.iter().enumerate() {
        if q % 2 == 0 {
            tau = tau.mul(d);
        } else {
            tau = tau.div(d);
        }
        log += if q % 2 == 0 { d.ln_abs() } else { -d.ln_abs() };
    }
    if tau.to_f64() < 0.0 {
        tau = tau.neg();
    }
    TorsionValue { dets, tau_abs: tau, log: LogTorsion { value: log } }
}

impl<S: Scalar> ChainMap<S> {
    /// Verify `d_B f_q = f_{q-1} d_A` in every degree.
    pub fn validate(
        &self,
        from: &ChainComplex<S>,
        to: &ChainComplex<S>,
    ) -> Result<(), ChainError> {
        let m = from.length().max(to.length());
        for q in 1..=m {
            let fq = self.mat(q, from, to);
            let fqm1 = self.mat(q - 1, from, to);
            let lhs = to.boundary(q).mul(&fq);
            let rhs = fqm1.mul(&from.boundary(q));
            if lhs != rhs {
                // exact equality is too strict over f64; compare entrywise
                let diff = lhs.add(&rhs.neg());
                if !diff.is_zero() {
                    return Err(ChainError::NotAChainMap { q });
                }
            }
        }
        Ok(())
    }

    pub fn mat(&self, q: usize, from: &ChainComplex<S>, to: &ChainComplex<S>) -> Matrix<S> {
        self.mats
            .get(q)
            .cloned()
            .unwrap_or_else(|| Matrix::zero(to.rank(q), from.rank(q)))
    }

    /// The induced map on degree-`q` homology, in the given bases.
    pub fn induced_on_homology(
        &self,
        from: &ChainComplex<S>,
        to: &ChainComplex<S>,
        h_from: &HomologyBasis<S>,
        h_to: &HomologyBasis<S>,
        q: usize,
    ) -> Result<Matrix<S>, ChainError> {
        let image = self.mat(q, from, to).mul(&h_from.cycles[q]);
        h_to.class_coordinates(to, q, &image)
            .ok_or(ChainError::NotExact { q, reason: "image class not expressible in target basis" })
    }
}

/// Transported dual data: for each degree the dual-basis matrix of the
/// torsion basis `(d(b), z, b)` is split back into `(d(b'), z', b')` for
/// the dual complex, so that each dual determinant is exactly the inverse
/// of the matching original one.
pub struct DualData<S> {
    pub complex: ChainComplex<S>,
    pub homology: HomologyBasis<S>,
    pub b_sets: Vec<Matrix<S>>,
}

/// Build the dual complex together with the transported homology and
/// `b`-data realizing `D'_q = D_{m-q}^{-1}` (up to sign).
pub fn dual_with_bases<S: Scalar>(
    c: &ChainComplex<S>,
    h: &HomologyBasis<S>,
    b_sets: Option<&[Matrix<S>]>,
) -> Result<DualData<S>, ChainError> {
    c.validate()?;
    h.validate(c)?;
    let m = c.length();
    let bs: Vec<Matrix<S>> = match b_sets {
        Some(bs) => bs.to_vec(),
        None => (0..=m).map(|q| default_b_set(c, q)).collect(),
    };
    let dual = c.dual();
    let mut h_dual = vec![Matrix::zero(0, 0); m + 1];
    let mut b_dual = vec![Matrix::zero(0, 0); m + 1];
    for q in 0..=m {
        let db_next = if q + 1 <= m {
            c.boundary(q + 1).mul(&bs[q + 1])
        } else {
            Matrix::zero(c.rank(q), 0)
        };
        let a_q = db_next.cols();
        let r_q = h.cycles[q].cols();
        let basis = db_next.hstack(&h.cycles[q]).hstack(&bs[q]);
        if basis.rows() != basis.cols() || (basis.rows() > 0 && basis.det().is_zero()) {
            return Err(ChainError::InconsistentBases { q });
        }
        // dual basis vectors = columns of (basis^-1)^T
        let inv = basis
            .solve(&Matrix::identity(basis.rows()))
            .ok_or(ChainError::InconsistentBases { q })?;
        let w = inv.transpose();
        let idx_b_new: Vec<usize> = (0..a_q).collect();
        let idx_h: Vec<usize> = (a_q..a_q + r_q).collect();
        b_dual[m - q] = w.select_columns(&idx_b_new);
        h_dual[m - q] = w.select_columns(&idx_h);
    }
    Ok(DualData { complex: dual, homology: HomologyBasis::new(h_dual), b_sets: b_dual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    fn rat(n: i64) -> Rat {
        Rat::from_i64(n)
    }

    fn two_term(d: i64) -> ChainComplex<Rat> {
        ChainComplex::new(vec![1, 1], vec![Matrix::from_i64_rows(&[&[d]])]).unwrap()
    }

    #[test]
    fn validate_accepts_zero_boundaries() {
        let c: ChainComplex<Rat> =
            ChainComplex::new(vec![2, 3], vec![Matrix::zero(2, 3)]).unwrap();
        assert!(c.validate().is_ok());
        assert_eq!(c.betti(), vec![2, 3]);
    }

    #[test]
    fn validate_catches_chain_condition() {
        let c = ChainComplex::new(
            vec![1, 1, 1],
            vec![Matrix::from_i64_rows(&[&[1]]), Matrix::from_i64_rows(&[&[1]])],
        )
        .unwrap();
        assert_eq!(c.validate(), Err(ChainError::ChainCondition { q: 1 }));
    }

    #[test]
    fn two_term_complex_has_torsion_two() {
        let c = two_term(2);
        assert!(c.validate().is_ok());
        assert_eq!(c.betti(), vec![0, 0]);
        let t = torsion(&c, &HomologyBasis::empty(&c), None).unwrap();
        assert_eq!(t.tau_abs, rat(2));
        assert!((t.log.value - 2f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn acyclic_two_term_betti() {
        let c = two_term(1);
        assert_eq!(c.betti(), vec![0, 0]);
    }

    #[test]
    fn torsion_rejects_inconsistent_homology() {
        let c = two_term(2);
        // claim a fake rank-1 homology in degree 0
        let h = HomologyBasis::new(vec![Matrix::from_i64_rows(&[&[1]]), Matrix::zero(1, 0)]);
        assert!(matches!(
            torsion(&c, &h, None),
            Err(ChainError::HomologyRankMismatch { q: 0, .. })
        ));
    }

    #[test]
    fn homology_validation_catches_non_cycles() {
        let c: ChainComplex<Rat> = ChainComplex::new(
            vec![1, 1],
            vec![Matrix::from_i64_rows(&[&[1]])],
        )
        .unwrap();
        let h = HomologyBasis::new(vec![Matrix::zero(1, 0), Matrix::from_i64_rows(&[&[1]])]);
        assert_eq!(h.validate(&c), Err(ChainError::NotACycle { q: 1, col: 0 }));
    }

    #[test]
    fn cylinder_of_point() {
        let c: ChainComplex<Rat> = ChainComplex::new(vec![1], vec![]).unwrap();
        let (cyl, incl) = c.mapping_cylinder();
        assert_eq!(cyl.ranks(), &[2, 1]);
        let d1 = cyl.boundary(1);
        assert_eq!(d1.get(0, 0), &rat(1));
        assert_eq!(d1.get(1, 0), &rat(-1));
        assert!(cyl.validate().is_ok());
        incl.validate(&c, &cyl).unwrap();
    }

    #[test]
    fn dual_is_involutive() {
        let c = ChainComplex::new(
            vec![2, 3, 1],
            vec![
                Matrix::from_i64_rows(&[&[1, 0, 2], &[-1, 3, 0]]),
                Matrix::from_i64_rows(&[&[6], &[2], &[-3]]),
            ],
        )
        .unwrap();
        assert_eq!(c.dual().dual(), c);
    }

    #[test]
    fn direct_sum_is_additive_on_torsion() {
        let a = two_term(2);
        let b = two_term(3);
        let s = a.direct_sum(&b);
        let t = torsion(&s, &HomologyBasis::empty(&s), None).unwrap();
        assert_eq!(t.tau_abs, rat(6));
    }
}
