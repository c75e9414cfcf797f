//! Model Hamiltonians: nearest-neighbor coupling chains and the three-level
//! ion coupled to a truncated oscillator mode, with invariant-subspace block
//! bookkeeping.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::hilbert::{BipartiteSpace, ComplexMatrix};
use crate::scalar::{atol, real, Real};

/// Master-level index of the repeatedly detected ground state.
pub const MASTER_G: usize = 0;
/// Master-level index of the first excited state (driven by the base coupling).
pub const MASTER_E1: usize = 1;
/// Master-level index of the second excited state (driven by the freezing
/// coupling).
pub const MASTER_E2: usize = 2;

/// Couplings of a nearest-neighbor chain; `c` couplings define a
/// `(c+1)`-level system.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainParams<R: Real> {
    pub couplings: Vec<Complex<R>>,
}

impl<R: Real> ChainParams<R> {
    pub fn new(couplings: Vec<Complex<R>>) -> Result<Self> {
        if couplings.is_empty() {
            return Err(Error::InvalidParameter("chain needs at least one coupling".into()));
        }
        for (k, z) in couplings.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFiniteEntry { row: k, col: 0 });
            }
        }
        Ok(Self { couplings })
    }

    /// Real-valued convenience constructor.
    pub fn from_reals(couplings: &[R]) -> Result<Self> {
        Self::new(couplings.iter().map(|&x| Complex::new(x, R::zero())).collect())
    }

    pub fn levels(&self) -> usize {
        self.couplings.len() + 1
    }
}

/// Parameters of the three-level ion / oscillator model: a base coupling of
/// strength `omega` on the `p`-th sideband of `g <-> e1` and a freezing
/// coupling of strength `kappa` on the `q`-th sideband of `e1 <-> e2`.
/// Negative orders are red sidebands (`a^{-s} = a^dag^s`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrappedIonParams<R: Real> {
    pub omega: R,
    pub kappa: R,
    pub p: i32,
    pub q: i32,
    pub eta1: R,
    pub eta2: R,
    /// Fock-space truncation: oscillator states `0..=n_max` are kept.
    pub n_max: usize,
}

impl<R: Real> TrappedIonParams<R> {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("omega", self.omega),
            ("kappa", self.kappa),
            ("eta1", self.eta1),
            ("eta2", self.eta2),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be finite")));
            }
            if v < R::zero() {
                return Err(Error::InvalidParameter(format!(
                    "{name} is a magnitude and must be nonnegative"
                )));
            }
        }
        // Enough room for at least one full (g, e1, e2) triplet.
        let need = self.p.unsigned_abs() as usize + self.q.unsigned_abs() as usize;
        if self.n_max < need {
            return Err(Error::InvalidParameter(format!(
                "n_max = {} too small: need at least |p| + |q| = {need}",
                self.n_max
            )));
        }
        Ok(())
    }

    pub fn slave_dim(&self) -> usize {
        self.n_max + 1
    }
}

/// Hermitian compound-system generator together with its invariant blocks
/// (connected components of the coupling graph on composite indices).
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianModel<R: Real> {
    pub space: BipartiteSpace,
    pub matrix: ComplexMatrix<R>,
    pub blocks: Vec<Vec<usize>>,
}

impl<R: Real> HamiltonianModel<R> {
    /// Wrap a generator, checking Hermiticity (within `1e-12`) and computing
    /// the block structure.
    pub fn new(space: BipartiteSpace, matrix: ComplexMatrix<R>) -> Result<Self> {
        if matrix.rows() != space.composite_dim() || !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: space.composite_dim(),
                found: matrix.rows(),
            });
        }
        let dev = matrix.hermiticity_deviation();
        if dev > atol::<R>(1e-12) {
            return Err(Error::NotHermitian { deviation: dev.to_f64().unwrap_or(f64::NAN) });
        }
        let blocks = coupling_blocks(&matrix);
        Ok(Self { space, matrix, blocks })
    }
}

/// Generalized Laguerre polynomial `L_m^{(p)}(x)` by the three-term
/// recurrence.
pub fn laguerre<R: Real>(m: usize, p: u32, x: R) -> R {
    let pr = real::<R>(f64::from(p));
    if m == 0 {
        return R::one();
    }
    let mut prev = R::one();
    let mut cur = R::one() + pr - x;
    for k in 1..m {
        let kr = real::<R>(k as f64);
        let next = ((real::<R>(2.0) * kr + R::one() + pr - x) * cur - (kr + pr) * prev)
            / (kr + R::one());
        prev = cur;
        cur = next;
    }
    cur
}

/// Nonlinear vibronic coupling function of sideband order `p`:
///
/// `f_p(m, eta) = exp(-eta^2/2) * (m! p! / (m+p)!) * L_m^{(p)}(eta^2)`,
///
/// normalized so that `f_p(m, 0) = 1` for every order (the residual `eta^p/p!`
/// sideband scaling is treated as part of the coupling-constant calibration).
/// In the Lamb-Dicke regime `eta << 1` all orders approach unity, and `f_0`
/// inherits the zeroes of the Laguerre polynomials.
pub fn lamb_dicke_factor<R: Real>(p: u32, m: usize, eta: R) -> Result<R> {
    if !eta.is_finite() || eta < R::zero() {
        return Err(Error::InvalidParameter("eta must be finite and nonnegative".into()));
    }
    let x = eta * eta;
    let envelope = (-x / real::<R>(2.0)).exp();
    // m! p! / (m+p)! = p! / prod_{k=m+1..m+p} k
    let mut ratio = R::one();
    for k in 1..=(p as usize) {
        ratio = ratio * real::<R>(k as f64) / real::<R>((m + k) as f64);
    }
    Ok(envelope * ratio * laguerre(m, p, x))
}

/// Slave-space ladder element for sideband order `order` acting on Fock state
/// `src`: returns the destination index and the real coupling factor
/// `f_{|order|}(lower, eta) * sqrt(upper! / lower!)`, or `None` when the
/// destination is truncated away (or below the vacuum).
pub(crate) fn sideband_element<R: Real>(
    order: i32,
    src: usize,
    eta: R,
    n_max: usize,
) -> Result<Option<(usize, R)>> {
    let s = order.unsigned_abs() as usize;
    let dst = if order >= 0 {
        match src.checked_sub(s) {
            Some(d) => d,
            None => return Ok(None),
        }
    } else {
        let d = src + s;
        if d > n_max {
            return Ok(None);
        }
        d
    };
    let lower = src.min(dst);
    let upper = src.max(dst);
    let f = lamb_dicke_factor(s as u32, lower, eta)?;
    let mut fact = R::one();
    for k in (lower + 1)..=upper {
        fact *= real::<R>(k as f64);
    }
    Ok(Some((dst, f * fact.sqrt())))
}

/// Per-channel coupling pair `(Omega_n, K_n)` of the invariant block anchored
/// at `(g, n)`: the `g -> e1` element from Fock state `n` and the onward
/// `e1 -> e2` element, zero where truncation or the vacuum removes the
/// partner.
pub fn channel_couplings<R: Real>(params: &TrappedIonParams<R>) -> Result<Vec<(R, R)>> {
    params.validate()?;
    let mut out = Vec::with_capacity(params.n_max + 1);
    for n in 0..=params.n_max {
        let first = sideband_element(params.p, n, params.eta1, params.n_max)?;
        let (omega_n, kappa_n) = match first {
            None => (R::zero(), R::zero()),
            Some((m1, g1)) => {
                let second = sideband_element(params.q, m1, params.eta2, params.n_max)?;
                let k = match second {
                    None => R::zero(),
                    Some((_, g2)) => params.kappa * g2,
                };
                (params.omega * g1, k)
            }
        };
        out.push((omega_n, kappa_n));
    }
    Ok(out)
}

/// Tridiagonal Hermitian chain with the given superdiagonal couplings. The
/// whole chain is a single invariant block.
pub fn build_chain<R: Real>(params: &ChainParams<R>) -> Result<HamiltonianModel<R>> {
    let n = params.levels();
    let mut h = ComplexMatrix::<R>::zeros(n, n);
    for (k, &g) in params.couplings.iter().enumerate() {
        h[(k, k + 1)] = g;
        h[(k + 1, k)] = g.conj();
    }
    let space = BipartiteSpace::new(n, 1)?;
    HamiltonianModel::new(space, h)
}

/// Three-level ion coupled to a truncated oscillator:
///
/// `H = Omega [ f_p(a^dag a, eta1) a^p |e1><g| + h.c. ]
///    + kappa [ f_q(a^dag a, eta2) a^q |e2><e1| + h.c. ]`
///
/// on the master-major composite space (master = {g, e1, e2}, slave = Fock
/// states `0..=n_max`). Operators are truncated at `n_max`; states orphaned by
/// truncation remain as singlet blocks.
pub fn build_trapped_ion<R: Real>(params: &TrappedIonParams<R>) -> Result<HamiltonianModel<R>> {
    params.validate()?;
    let space = BipartiteSpace::new(3, params.slave_dim())?;
    let dim = space.composite_dim();
    let mut h = ComplexMatrix::<R>::zeros(dim, dim);

    for n in 0..=params.n_max {
        if let Some((m1, g1)) = sideband_element(params.p, n, params.eta1, params.n_max)? {
            let row = space.composite_index(MASTER_E1, m1)?;
            let col = space.composite_index(MASTER_G, n)?;
            let val = Complex::new(params.omega * g1, R::zero());
            h[(row, col)] += val;
            h[(col, row)] += val.conj();
        }
    }
    for m in 0..=params.n_max {
        if let Some((m2, g2)) = sideband_element(params.q, m, params.eta2, params.n_max)? {
            let row = space.composite_index(MASTER_E2, m2)?;
            let col = space.composite_index(MASTER_E1, m)?;
            let val = Complex::new(params.kappa * g2, R::zero());
            h[(row, col)] += val;
            h[(col, row)] += val.conj();
        }
    }
    HamiltonianModel::new(space, h)
}

/// Invariant index sets of a model: connected components of the graph whose
/// edges are the nonzero off-diagonal entries. Blocks are sorted by their
/// smallest index, indices ascending within each block.
pub fn block_decompose<R: Real>(model: &HamiltonianModel<R>) -> Vec<Vec<usize>> {
    coupling_blocks(&model.matrix)
}

fn coupling_blocks<R: Real>(h: &ComplexMatrix<R>) -> Vec<Vec<usize>> {
    let n = h.rows();
    let mut seen = vec![false; n];
    let mut blocks = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut block = Vec::new();
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(i) = stack.pop() {
            block.push(i);
            for j in 0..n {
                if i != j && !seen[j] {
                    let z = h[(i, j)];
                    if z.re != R::zero() || z.im != R::zero() {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }
    blocks.sort_by_key(|b| b[0]);
    blocks
}
