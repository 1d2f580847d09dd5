//! Channel representation of a two-qubit state: `rho = (Lambda (x) id)(|r><r|)`
//! where `|r>` is the symmetric purification of `rho_B` on an ancilla and
//! `Lambda` maps the ancilla onto qubit A.

use crate::dynamics::ProductState;
use crate::error::{Error, Result};
use crate::qlinalg::{hermitian_eig, pauli, partial_trace, CMatrix, DensityMatrix, Subsystem};
use crate::scalar::{cre, cx, Cx, Real};

/// Minimum eigenvalue of `rho_B` for the channel to be recoverable.
pub const RANK_TOLERANCE: f64 = 1e-7;

/// Largest tolerated imaginary part of an `L` entry.
pub const L_IMAG_TOL: f64 = 1e-9;

/// Largest tolerated deviation of the rebuilt state from the input.
pub const RECONSTRUCTION_TOL: f64 = 1e-8;

/// Symmetric purification `|r> = A|00> + B(|01> + |10>) + D|11>` of a qubit
/// state with spectral decomposition `l1 |a><a| + l2 |b><b|`, `l1 >= l2`.
///
/// `A = sqrt(l1) a0^2 + sqrt(l2) b0^2`, `B = sqrt(l1) a0 a1 + sqrt(l2) b0 b1`,
/// `D = sqrt(l1) a1^2 + sqrt(l2) b1^2`. These are real whenever `rho_B` is.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Purification<R: Real> {
    pub a: Cx<R>,
    pub b: Cx<R>,
    pub d: Cx<R>,
    pub lambda1: R,
    pub lambda2: R,
    pub evec1: [Cx<R>; 2],
    pub evec2: [Cx<R>; 2],
}

impl<R: Real> Purification<R> {
    /// The symmetric matrix `r = [[A, B], [B, D]]`.
    pub fn matrix(&self) -> CMatrix<R> {
        CMatrix::from_rows(&[&[self.a, self.b], &[self.b, self.d]]).expect("2x2")
    }

    /// `|r>` in the basis `|ancilla, B>`.
    pub fn vector(&self) -> [Cx<R>; 4] {
        [self.a, self.b, self.b, self.d]
    }

    /// `tr_ancilla |r><r|`.
    pub fn reduced(&self) -> CMatrix<R> {
        let r = self.matrix();
        r.transpose() * r.conj()
    }
}

pub fn purify<R: Real>(rho_b: &DensityMatrix<R>) -> Result<Purification<R>> {
    if rho_b.dim() != 2 {
        return Err(Error::Dimension { dim: rho_b.dim() });
    }
    let eig = hermitian_eig(rho_b.matrix())?;
    let (l1, l2) = (eig.values[1].max(R::zero()), eig.values[0].max(R::zero()));
    let v1 = eig.vector(1);
    let v2 = eig.vector(0);
    let (s1, s2) = (l1.sqrt(), l2.sqrt());
    Ok(Purification {
        a: v1[0] * v1[0] * cre(s1) + v2[0] * v2[0] * cre(s2),
        b: v1[0] * v1[1] * cre(s1) + v2[0] * v2[1] * cre(s2),
        d: v1[1] * v1[1] * cre(s1) + v2[1] * v2[1] * cre(s2),
        lambda1: l1,
        lambda2: l2,
        evec1: [v1[0], v1[1]],
        evec2: [v2[0], v2[1]],
    })
}

/// Qubit-A blocks of a two-qubit state.
///
/// Index pattern (0-based product indices `2a + b`):
/// `b00[(a, a')] = rho[2a, 2a']`, `b11[(a, a')] = rho[2a+1, 2a'+1]`,
/// `b01[(a, a')] = rho[2a+1, 2a']`, `b10[(a, a')] = rho[2a, 2a'+1]`.
/// Hence `rho = sum_ij b_ij (x) |j><i|`: the off-diagonal labels are the
/// transpose of the `|i><j|` operator they multiply.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaBlocks<R: Real> {
    pub b00: CMatrix<R>,
    pub b01: CMatrix<R>,
    pub b10: CMatrix<R>,
    pub b11: CMatrix<R>,
}

impl<R: Real> BetaBlocks<R> {
    /// Block multiplying `|i><j|` on qubit B.
    pub fn coefficient_of(&self, i: usize, j: usize) -> &CMatrix<R> {
        match (i, j) {
            (0, 0) => &self.b00,
            (1, 0) => &self.b01,
            (0, 1) => &self.b10,
            _ => &self.b11,
        }
    }

    /// `sum_ij b_ij (x) |j><i|`.
    pub fn reassemble(&self) -> CMatrix<R> {
        let mut out = CMatrix::zeros(4);
        for i in 0..2 {
            for j in 0..2 {
                let mut e = CMatrix::zeros(2);
                e[(i, j)] = cre(R::one());
                out = out + self.coefficient_of(i, j).kron(&e);
            }
        }
        out
    }
}

pub fn beta_blocks<R: Real>(rho: &ProductState<R>) -> BetaBlocks<R> {
    let m = rho.matrix();
    let block = |ro: usize, co: usize| CMatrix::from_fn(2, |a, ap| m[(2 * a + ro, 2 * ap + co)]);
    BetaBlocks {
        b00: block(0, 0),
        b01: block(1, 0),
        b10: block(0, 1),
        b11: block(1, 1),
    }
}

/// Images `Lambda(|i><j|)` of the four qubit matrix units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelImages<R: Real> {
    pub im: [[CMatrix<R>; 2]; 2],
}

impl<R: Real> ChannelImages<R> {
    /// `Lambda(x)` by linearity.
    pub fn apply(&self, x: &CMatrix<R>) -> CMatrix<R> {
        let mut out = CMatrix::zeros(2);
        for i in 0..2 {
            for j in 0..2 {
                out = out + self.im[i][j].scale_c(x[(i, j)]);
            }
        }
        out
    }

    /// `(Lambda (x) id)(|r><r|)`.
    pub fn act_on_purification(&self, p: &Purification<R>) -> CMatrix<R> {
        let r = p.matrix();
        let mut out = CMatrix::zeros(4);
        for b in 0..2 {
            for c in 0..2 {
                let mut blk = CMatrix::zeros(2);
                for bp in 0..2 {
                    for cp in 0..2 {
                        blk = blk + self.im[bp][cp].scale_c(r[(bp, b)] * r[(cp, c)].conj());
                    }
                }
                let mut e = CMatrix::zeros(2);
                e[(b, c)] = cre(R::one());
                out = out + blk.kron(&e);
            }
        }
        out
    }

    /// The identity map.
    pub fn identity() -> Self {
        let unit = |i: usize, j: usize| {
            let mut e = CMatrix::zeros(2);
            e[(i, j)] = cre(R::one());
            e
        };
        Self {
            im: [[unit(0, 0), unit(0, 1)], [unit(1, 0), unit(1, 1)]],
        }
    }
}

/// Channel extraction together with the purification it refers to.
#[derive(Debug, Clone, Copy)]
pub struct Extraction<R: Real> {
    pub channel: ChannelImages<R>,
    pub purification: Purification<R>,
    pub reduced_b: DensityMatrix<R>,
}

/// Recovers `Lambda` from `rho = (Lambda (x) id)(|r><r|)`.
///
/// Writing `rho = sum_bc beta_bc (x) |b><c|`, each block is
/// `beta_bc = sum r_{b'b} conj(r_{c'c}) Lambda(|b'><c'|)`, a linear system with
/// coefficient matrix `r (x) conj(r)`. Its inverse factorizes, so
/// `Lambda(|b'><c'|) = sum (r^-1)_{b'b} beta_bc conj(r^-1)_{cc'}`.
pub fn extract_channel<R: Real>(rho: &ProductState<R>) -> Result<Extraction<R>> {
    let rho_b = partial_trace(rho.rho(), Subsystem::B)?;
    let p = purify(&rho_b)?;
    let tol = R::lit(RANK_TOLERANCE);
    if p.lambda2 < tol {
        return Err(Error::DegenerateReducedState {
            min_eigenvalue: p.lambda2.as_f64(),
            tolerance: RANK_TOLERANCE,
        });
    }
    let r = p.matrix();
    let det = r[(0, 0)] * r[(1, 1)] - r[(0, 1)] * r[(1, 0)];
    let inv = CMatrix::from_rows(&[&[r[(1, 1)], -r[(0, 1)]], &[-r[(1, 0)], r[(0, 0)]]])
        .expect("2x2")
        .scale_c(cre(R::one()) / det);
    let blocks = beta_blocks(rho);
    let mut im = [[CMatrix::zeros(2); 2]; 2];
    for (bp, row) in im.iter_mut().enumerate() {
        for (cp, slot) in row.iter_mut().enumerate() {
            let mut acc = CMatrix::zeros(2);
            for b in 0..2 {
                for c in 0..2 {
                    let w = inv[(bp, b)] * inv[(c, cp)].conj();
                    acc = acc + blocks.coefficient_of(b, c).scale_c(w);
                }
            }
            *slot = acc;
        }
    }
    let channel = ChannelImages { im };
    let residual = channel.act_on_purification(&p).max_abs_diff(rho.matrix());
    if residual > R::lit(RECONSTRUCTION_TOL) {
        return Err(Error::Numerical {
            context: "channel reconstruction of the two-qubit state",
            residual: residual.as_f64(),
        });
    }
    Ok(Extraction {
        channel,
        purification: p,
        reduced_b: rho_b,
    })
}

/// `L_ij = tr[Lambda(sigma_j) sigma_i] / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LMatrix<R: Real> {
    pub entries: [[R; 3]; 3],
}

impl<R: Real> LMatrix<R> {
    /// `L^T L` as a real symmetric matrix.
    pub fn gram(&self) -> [[R; 3]; 3] {
        let l = &self.entries;
        let mut g = [[R::zero(); 3]; 3];
        for (i, row) in g.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..3).map(|k| l[k][i] * l[k][j]).sum();
            }
        }
        g
    }

    /// Largest eigenvalue of `L^T L`.
    pub fn lambda_max(&self) -> Result<R> {
        let g = self.gram();
        let m = CMatrix::from_fn(3, |i, j| cre(g[i][j]));
        Ok(*hermitian_eig(&m)?.values.last().expect("3 eigenvalues"))
    }

    /// Singular values, descending.
    pub fn singular_values(&self) -> Result<[R; 3]> {
        let g = self.gram();
        let m = CMatrix::from_fn(3, |i, j| cre(g[i][j]));
        let v = hermitian_eig(&m)?.values;
        Ok([v[2], v[1], v[0]].map(|x| x.max(R::zero()).sqrt()))
    }
}

/// Images of the Pauli matrices, `[Lambda(sx), Lambda(sy), Lambda(sz)]`.
pub fn pauli_images<R: Real>(ch: &ChannelImages<R>) -> [CMatrix<R>; 3] {
    let [[l00, l01], [l10, l11]] = ch.im;
    let i = cx(R::zero(), R::one());
    [l01 + l10, l01.scale_c(-i) + l10.scale_c(i), l00 - l11]
}

pub fn l_matrix<R: Real>(ch: &ChannelImages<R>) -> Result<LMatrix<R>> {
    let images = pauli_images(ch);
    let sig = pauli::all::<R>();
    let mut entries = [[R::zero(); 3]; 3];
    let half = R::lit(0.5);
    for i in 0..3 {
        for j in 0..3 {
            let z = (images[j] * sig[i]).trace() * cre(half);
            if z.im.abs() > R::lit(L_IMAG_TOL) {
                return Err(Error::Numerical {
                    context: "imaginary part of an L-matrix entry",
                    residual: z.im.as_f64(),
                });
            }
            entries[i][j] = z.re;
        }
    }
    Ok(LMatrix { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlations::fixtures::*;
    use proptest::prelude::*;

    #[test]
    fn purification_fixtures() {
        let p = purify(&DensityMatrix::<f64>::maximally_mixed(2)).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((p.a - cre(h)).norm() < 1e-15 && (p.d - cre(h)).norm() < 1e-15);
        assert!(p.b.norm() < 1e-15);
        let pure = purify(&DensityMatrix::<f64>::pure(&[cre(1.0), cre(0.0)]).unwrap()).unwrap();
        assert!((pure.a - cre(1.0)).norm() < 1e-15 && pure.b.norm() < 1e-15 && pure.d.norm() < 1e-15);
        assert!(pure.lambda1 >= pure.lambda2);
    }

    #[test]
    fn beta_fixtures() {
        let q = beta_blocks(&ProductState::from_matrix(CMatrix::identity(4).scale(0.25)).unwrap());
        assert!(q.b00.max_abs_diff(&CMatrix::identity(2).scale(0.25)) < 1e-16);
        assert!(q.b11.max_abs_diff(&CMatrix::identity(2).scale(0.25)) < 1e-16);
        assert!(q.b01.max_abs() == 0.0 && q.b10.max_abs() == 0.0);
        let b = beta_blocks(&bell());
        assert!(b.b00.max_abs_diff(&CMatrix::diag(&[0.5, 0.0])) < 1e-15);
        assert!(b.b11.max_abs_diff(&CMatrix::diag(&[0.0, 0.5])) < 1e-15);
        let nonzero = b.b01.entries().filter(|z| z.norm() > 1e-12).count();
        assert_eq!(nonzero, 1);
        assert!((b.b01[(1, 0)] - cre(0.5)).norm() < 1e-15);
    }

    #[test]
    fn bell_state_gives_identity_channel() {
        let ex = extract_channel(&bell()).unwrap();
        let id = ChannelImages::<f64>::identity();
        for i in 0..2 {
            for j in 0..2 {
                assert!(ex.channel.im[i][j].max_abs_diff(&id.im[i][j]) < 1e-12);
            }
        }
        let l = l_matrix(&ex.channel).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((l.entries[i][j] - if i == j { 1.0 } else { 0.0 }).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn maximally_mixed_gives_depolarizing_channel() {
        let ex = extract_channel(&ProductState::from_matrix(CMatrix::identity(4).scale(0.25)).unwrap()).unwrap();
        let half = CMatrix::identity(2).scale(0.5);
        assert!(ex.channel.im[0][0].max_abs_diff(&half) < 1e-14);
        assert!(ex.channel.im[1][1].max_abs_diff(&half) < 1e-14);
        assert!(ex.channel.im[0][1].max_abs() < 1e-14 && ex.channel.im[1][0].max_abs() < 1e-14);
        let l = l_matrix(&ex.channel).unwrap();
        assert!(l.entries.iter().flatten().all(|v: &f64| v.abs() < 1e-14));
    }

    #[test]
    fn dephasing_channel_l_matrix() {
        let mut ch = ChannelImages::<f64>::identity();
        ch.im[0][1] = CMatrix::zeros(2);
        ch.im[1][0] = CMatrix::zeros(2);
        let l = l_matrix(&ch).unwrap();
        let expect = [[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 1.0]];
        assert_eq!(l.entries, expect);
    }

    #[test]
    fn pure_marginal_is_degenerate() {
        assert!(matches!(extract_channel(&ground()), Err(Error::DegenerateReducedState { .. })));
    }

    #[test]
    fn imaginary_l_entries_rejected() {
        let mut ch = ChannelImages::<f64>::identity();
        ch.im[0][1] = ch.im[0][1] + crate::qlinalg::pauli::z().scale(0.1);
        assert!(matches!(l_matrix(&ch), Err(Error::Numerical { .. })));
    }

    proptest! {
        #[test]
        fn purification_reproduces_marginal(seed in prop::collection::vec(-1.0f64..1.0, 32)) {
            let rho = random_state(&seed);
            let rb = partial_trace(rho.rho(), Subsystem::B).unwrap();
            let p = purify(&rb).unwrap();
            prop_assert!(p.reduced().max_abs_diff(rb.matrix()) <= 1e-12);
            prop_assert!(p.lambda1 >= p.lambda2);
        }

        #[test]
        fn channel_round_trip(seed in prop::collection::vec(-1.0f64..1.0, 32)) {
            let rho = random_state(&seed);
            let blocks = beta_blocks(&rho);
            prop_assert!(blocks.reassemble().max_abs_diff(rho.matrix()) <= 1e-14);
            let ex = extract_channel(&rho).unwrap();
            let ch = ex.channel;
            prop_assert!(ch.act_on_purification(&ex.purification).max_abs_diff(rho.matrix()) <= 1e-8);
            prop_assert!(ch.im[1][0].max_abs_diff(&ch.im[0][1].adjoint()) <= 1e-10);
            prop_assert!(ch.im[0][0].hermiticity_residual() <= 1e-10);
            prop_assert!(ch.im[1][1].hermiticity_residual() <= 1e-10);
            prop_assert!((ch.im[0][0].trace() - cre(1.0)).norm() <= 1e-10);
            prop_assert!((ch.im[1][1].trace() - cre(1.0)).norm() <= 1e-10);
            prop_assert!(ch.im[0][1].trace().norm() <= 1e-10);
            let sv = l_matrix(&ch).unwrap().singular_values().unwrap();
            prop_assert!(sv[0] <= 1.0 + 1e-8);
        }
    }
}
