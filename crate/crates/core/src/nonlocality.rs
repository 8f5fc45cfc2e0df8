//! CHSH correlations: deterministic strategies, quantum scenarios with a
//! seesaw optimizer, and no-signaling behavior tables such as the PR box.

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{spectral_sign, ComplexMatrix, HermitianMatrix, Subsystem};
use crate::logic::State;
use crate::random::{random_hermitian, random_state, random_unit_observable, sample_rng};
use crate::TSIRELSON_BOUND;

/// Spectrum slack for observables `‖a‖ ≤ 1`.
pub const SPECTRUM_TOL: f64 = 1e-9;
/// Normalization and no-signaling tolerance for behavior tables.
pub const BEHAVIOR_TOL: f64 = 1e-12;
/// Classification slack on the CHSH thresholds 2 and `2√2`.
pub const CLASSIFY_TOL: f64 = 1e-9;
/// Slack on the operator bound `4√2`.
pub const INEQUALITY_TOL: f64 = 1e-9;

/// Two parties, two dichotomic settings each.
///
/// Setting indices are `0` and `1`, standing for `a₁, a₂` and `b₁, b₂`.
#[derive(Clone, Debug)]
pub struct CorrelationScenario {
    dims: (usize, usize),
    state: State,
    alice: [HermitianMatrix; 2],
    bob: [HermitianMatrix; 2],
}

impl CorrelationScenario {
    pub fn new(
        dims: (usize, usize),
        state: State,
        alice: [HermitianMatrix; 2],
        bob: [HermitianMatrix; 2],
    ) -> Result<Self> {
        let (da, db) = dims;
        if state.dim() != da * db {
            return Err(Error::DimensionMismatch(format!(
                "state of dimension {} on a {da}x{db} system",
                state.dim()
            )));
        }
        for (name, obs, d) in [
            ("a1", &alice[0], da),
            ("a2", &alice[1], da),
            ("b1", &bob[0], db),
            ("b2", &bob[1], db),
        ] {
            if obs.dim() != d {
                return Err(Error::DimensionMismatch(format!(
                    "{name} has dimension {}, expected {d}",
                    obs.dim()
                )));
            }
            let e = obs.eig()?;
            let (hi, lo) = (e.values[0], e.values[d - 1]);
            if hi > 1.0 + SPECTRUM_TOL || lo < -1.0 - SPECTRUM_TOL {
                return Err(Error::SpectrumOutOfRange(format!(
                    "{name} has eigenvalues in [{lo}, {hi}]"
                )));
            }
        }
        Ok(Self {
            dims,
            state,
            alice,
            bob,
        })
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn state(&self) -> &State {
        &self.state
    }

    pub fn alice(&self) -> &[HermitianMatrix; 2] {
        &self.alice
    }

    pub fn bob(&self) -> &[HermitianMatrix; 2] {
        &self.bob
    }

    /// Same observables, different state.
    pub fn with_state(&self, state: State) -> Result<Self> {
        Self::new(self.dims, state, self.alice.clone(), self.bob.clone())
    }

    /// Exchange the parties: the state is conjugated by the swap of tensor factors.
    pub fn swapped(&self) -> Result<Self> {
        let (da, db) = self.dims;
        let rho = self.state.matrix();
        let idx = |i: usize| (i % db) * da + i / db;
        // entry (iB·dA + iA, jB·dA + jA) of the swapped state is ρ[(iA·dB + iB, jA·dB + jB)]
        let mut out = ComplexMatrix::zeros(da * db, da * db);
        for i in 0..da * db {
            for j in 0..da * db {
                out[(idx(i), idx(j))] = rho[(i, j)];
            }
        }
        Self::new(
            (db, da),
            State::new(HermitianMatrix::hermitian_part(&out)?)?,
            self.bob.clone(),
            self.alice.clone(),
        )
    }

    /// `c_kl = tr(ρ·(a_k ⊗ b_l))`.
    pub fn correlation(&self, k: usize, l: usize) -> Result<f64> {
        correlation(self, k, l)
    }

    pub fn chsh_value(&self) -> Result<f64> {
        chsh_value(self)
    }

    pub fn bell_operator(&self) -> HermitianMatrix {
        bell_operator(&self.alice, &self.bob)
    }
}

fn setting(i: usize) -> Result<usize> {
    if i > 1 {
        return Err(Error::InvalidArgument(format!(
            "setting index {i} (expected 0 or 1)"
        )));
    }
    Ok(i)
}

pub fn correlation(s: &CorrelationScenario, k: usize, l: usize) -> Result<f64> {
    let op = s.alice[setting(k)?].kron(&s.bob[setting(l)?]);
    let c = s.state.matrix().trace_of_product(op.matrix())?.re;
    Ok(c.clamp(-1.0, 1.0))
}

/// `c₁₁ + c₁₂ + c₂₁ − c₂₂`.
pub fn chsh_value(s: &CorrelationScenario) -> Result<f64> {
    Ok(
        correlation(s, 0, 0)? + correlation(s, 0, 1)? + correlation(s, 1, 0)?
            - correlation(s, 1, 1)?,
    )
}

/// `a₁⊗b₁ + a₁⊗b₂ + a₂⊗b₁ − a₂⊗b₂`.
pub fn bell_operator(alice: &[HermitianMatrix; 2], bob: &[HermitianMatrix; 2]) -> HermitianMatrix {
    let plus = bob[0]
        .add(&bob[1])
        .expect("Bob's observables share a dimension");
    let minus = bob[0]
        .sub(&bob[1])
        .expect("Bob's observables share a dimension");
    alice[0]
        .kron(&plus)
        .add(&alice[1].kron(&minus))
        .expect("Alice's observables share a dimension")
}

/// ±1 assignment to `a₁, a₂, b₁, b₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeterministicStrategy {
    pub a: [i8; 2],
    pub b: [i8; 2],
}

impl DeterministicStrategy {
    pub fn chsh(&self) -> i32 {
        let [a1, a2] = self.a.map(i32::from);
        let [b1, b2] = self.b.map(i32::from);
        a1 * b1 + a1 * b2 + a2 * b1 - a2 * b2
    }

    /// All 16 strategies, `+1` before `−1` in the order `a₁, a₂, b₁, b₂`.
    pub fn all() -> impl Iterator<Item = DeterministicStrategy> {
        (0u8..16).map(|bits| {
            let s = |i: u8| if bits & (8 >> i) == 0 { 1 } else { -1 };
            DeterministicStrategy {
                a: [s(0), s(1)],
                b: [s(2), s(3)],
            }
        })
    }
}

/// Maximum CHSH value over the 16 deterministic strategies, with the first witness found.
pub fn classical_max() -> (i32, DeterministicStrategy) {
    DeterministicStrategy::all()
        .map(|s| (s.chsh(), s))
        .fold(
            None,
            |best: Option<(i32, DeterministicStrategy)>, cur| match best {
                Some(b) if b.0 >= cur.0 => Some(b),
                _ => Some(cur),
            },
        )
        .expect("16 strategies")
}

/// Minimum CHSH value over the 16 deterministic strategies.
pub fn classical_min() -> (i32, DeterministicStrategy) {
    DeterministicStrategy::all()
        .map(|s| (s.chsh(), s))
        .fold(
            None,
            |best: Option<(i32, DeterministicStrategy)>, cur| match best {
                Some(b) if b.0 <= cur.0 => Some(b),
                _ => Some(cur),
            },
        )
        .expect("16 strategies")
}

#[derive(Clone, Debug)]
pub struct SeesawConfig {
    pub dims: (usize, usize),
    pub seed: u64,
    pub tol: f64,
    pub max_iters: usize,
}

impl SeesawConfig {
    pub fn new(dim_a: usize, dim_b: usize, seed: u64) -> Self {
        Self {
            dims: (dim_a, dim_b),
            seed,
            tol: 1e-10,
            max_iters: 500,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SeesawResult {
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Bell-operator top eigenvalue at the start of each iteration.
    pub trace: Vec<f64>,
    pub scenario: CorrelationScenario,
}

/// Seesaw from observables drawn as spectral signs of random traceless
/// Hermitian matrices.
///
/// Removing the trace guarantees both signs occur in the spectrum; a sign
/// matrix equal to `±𝕀` would pin the seesaw at the commuting value 2.
pub fn seesaw_optimize(cfg: &SeesawConfig) -> Result<SeesawResult> {
    let (da, db) = cfg.dims;
    if da < 2 || db < 2 {
        return Err(Error::InvalidArgument(format!(
            "seesaw needs local dimensions ≥ 2, got {da}x{db}"
        )));
    }
    let mut rng = sample_rng(cfg.seed, 0);
    let mut draw = |n: usize| {
        let h = random_hermitian(&mut rng, n);
        let shift = HermitianMatrix::identity(n).scale(h.trace() / n as f64);
        spectral_sign(&h.sub(&shift)?)
    };
    let alice = [draw(da)?, draw(da)?];
    let bob = [draw(db)?, draw(db)?];
    seesaw_from(alice, bob, cfg.tol, cfg.max_iters)
}

/// Alternating maximization starting from the given observables.
///
/// Each iteration (i) sets the state to a top eigenvector of the Bell
/// operator, (ii) replaces Alice's observables by the spectral signs of
/// `tr_B(ρ(𝕀⊗(b₁ ± b₂)))`, (iii) does the same for Bob. Every half-step is
/// an exact maximization, so the recorded values never decrease. Stops once
/// an iteration improves the value by less than `tol`.
pub fn seesaw_from(
    mut alice: [HermitianMatrix; 2],
    mut bob: [HermitianMatrix; 2],
    tol: f64,
    max_iters: usize,
) -> Result<SeesawResult> {
    let dims = (alice[0].dim(), bob[0].dim());
    let (da, db) = dims;
    if max_iters == 0 {
        return Err(Error::InvalidArgument("max_iters must be positive".into()));
    }
    let mut trace = Vec::new();
    let mut converged = false;
    let mut state;
    loop {
        let bell = bell_operator(&alice, &bob);
        let e = bell.eig()?;
        let top = e.vectors.column(0);
        state = State::pure(&top)?;
        let value = e.values[0];
        let improvement = trace.last().map(|prev| value - prev);
        trace.push(value);
        if improvement.is_some_and(|d| d < tol) {
            converged = true;
            break;
        }
        if trace.len() == max_iters {
            break;
        }

        let rho = state.matrix();
        let local = |op: HermitianMatrix, keep: Subsystem| -> Result<HermitianMatrix> {
            let m = rho.mat_mul(op.matrix())?.partial_trace(dims, keep)?;
            spectral_sign(&HermitianMatrix::hermitian_part(&m)?)
        };
        let id_a = HermitianMatrix::identity(da);
        let id_b = HermitianMatrix::identity(db);
        alice = [
            local(id_a.kron(&bob[0].add(&bob[1])?), Subsystem::A)?,
            local(id_a.kron(&bob[0].sub(&bob[1])?), Subsystem::A)?,
        ];
        // Bob's coefficients: tr(ρ((a₁+a₂)⊗b₁)) + tr(ρ((a₁−a₂)⊗b₂))
        bob = [
            local(alice[0].add(&alice[1])?.kron(&id_b), Subsystem::B)?,
            local(alice[0].sub(&alice[1])?.kron(&id_b), Subsystem::B)?,
        ];
    }
    // Both exits leave `state` as the top eigenvector for the current observables.
    let value = *trace.last().expect("at least one iteration");
    let iterations = trace.len();
    let scenario = CorrelationScenario::new(dims, state, alice, bob)?;
    Ok(SeesawResult {
        value,
        iterations,
        converged,
        trace,
        scenario,
    })
}

/// Random scenario: Ginibre state, four observables of unit operator norm.
pub fn random_scenario(rng: &mut impl Rng, dims: (usize, usize)) -> Result<CorrelationScenario> {
    let (da, db) = dims;
    let state = random_state(rng, da * db);
    let alice = [
        random_unit_observable(rng, da),
        random_unit_observable(rng, da),
    ];
    let bob = [
        random_unit_observable(rng, db),
        random_unit_observable(rng, db),
    ];
    CorrelationScenario::new(dims, state, alice, bob)
}

/// The singlet with `a = σz, σx` and `b = −(σz ± σx)/√2`, reaching `2√2`.
pub fn optimal_qubit_scenario() -> CorrelationScenario {
    use crate::linalg::pauli;
    use num_complex::Complex64;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let zero = Complex64::new(0.0, 0.0);
    let singlet = State::pure(&[zero, Complex64::new(h, 0.0), Complex64::new(-h, 0.0), zero])
        .expect("unit vector");
    let (x, z) = (pauli::x(), pauli::z());
    let b1 = z.add(&x).expect("2x2").scale(-h);
    let b2 = z.sub(&x).expect("2x2").scale(-h);
    CorrelationScenario::new((2, 2), singlet, [z, x], [b1, b2]).expect("valid scenario")
}

/// No-signaling behavior `p(x, y | k, l)` with outcomes `x, y ∈ {+1, −1}`
/// and settings `k, l ∈ {0, 1}`.
///
/// Stored as `p[k][l][x][y]` with outcome index `0 ↔ +1` and `1 ↔ −1`.
#[derive(Clone, Debug, PartialEq)]
pub struct BehaviorTable {
    p: [[[[f64; 2]; 2]; 2]; 2],
}

/// Outcome value for outcome index `0`/`1`.
pub const OUTCOMES: [i8; 2] = [1, -1];

impl BehaviorTable {
    pub fn new(p: [[[[f64; 2]; 2]; 2]; 2]) -> Result<Self> {
        let t = Self { p };
        t.validate()?;
        Ok(t)
    }

    /// Table from a closure `(x, y, k, l) ↦ p`, with `x, y = ±1` and `k, l ∈ {0, 1}`.
    pub fn from_fn(f: impl Fn(i8, i8, usize, usize) -> f64) -> Result<Self> {
        let mut p = [[[[0.0; 2]; 2]; 2]; 2];
        for (k, pk) in p.iter_mut().enumerate() {
            for (l, pkl) in pk.iter_mut().enumerate() {
                for (xi, row) in pkl.iter_mut().enumerate() {
                    for (yi, slot) in row.iter_mut().enumerate() {
                        *slot = f(OUTCOMES[xi], OUTCOMES[yi], k, l);
                    }
                }
            }
        }
        Self::new(p)
    }

    /// Popescu–Rohrlich box: perfectly correlated except anticorrelated at `(k, l) = (1, 1)`.
    pub fn pr_box() -> Self {
        Self::from_fn(|x, y, k, l| {
            let want = if (k, l) == (1, 1) { -1 } else { 1 };
            if x * y == want {
                0.5
            } else {
                0.0
            }
        })
        .expect("PR box is no-signaling")
    }

    pub fn uniform() -> Self {
        Self::from_fn(|_, _, _, _| 0.25).expect("uniform table is no-signaling")
    }

    /// Outputs fixed by a deterministic strategy.
    pub fn deterministic(s: DeterministicStrategy) -> Self {
        Self::from_fn(|x, y, k, l| f64::from(u8::from(x == s.a[k] && y == s.b[l])))
            .expect("deterministic tables are no-signaling")
    }

    /// Every output `+1`.
    pub fn local() -> Self {
        Self::deterministic(DeterministicStrategy {
            a: [1, 1],
            b: [1, 1],
        })
    }

    /// `λ·self + (1−λ)·other`.
    pub fn mix(&self, lambda: f64, other: &Self) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidArgument(format!(
                "mixing weight {lambda} outside [0, 1]"
            )));
        }
        Self::from_fn(|x, y, k, l| {
            lambda * self.get(x, y, k, l) + (1.0 - lambda) * other.get(x, y, k, l)
        })
    }

    /// Outcome statistics of a quantum scenario, using the spectral measures `(𝕀 ± a)/2`.
    pub fn from_scenario(s: &CorrelationScenario) -> Result<Self> {
        let (da, db) = s.dims;
        let effect = |obs: &HermitianMatrix, sign: i8, d: usize| {
            HermitianMatrix::identity(d)
                .add(&obs.scale(f64::from(sign)))
                .map(|m| m.scale(0.5))
        };
        let mut p = [[[[0.0; 2]; 2]; 2]; 2];
        for (k, pk) in p.iter_mut().enumerate() {
            for (l, pkl) in pk.iter_mut().enumerate() {
                for (xi, row) in pkl.iter_mut().enumerate() {
                    for (yi, slot) in row.iter_mut().enumerate() {
                        let op = effect(&s.alice[k], OUTCOMES[xi], da)?.kron(&effect(
                            &s.bob[l],
                            OUTCOMES[yi],
                            db,
                        )?);
                        *slot = s.state.matrix().trace_of_product(op.matrix())?.re.max(0.0);
                    }
                }
            }
        }
        // Renormalize rounding so the 1e-12 checks hold.
        for pk in p.iter_mut() {
            for pkl in pk.iter_mut() {
                let total: f64 = pkl.iter().flatten().sum();
                pkl.iter_mut().flatten().for_each(|v| *v /= total);
            }
        }
        Self::new(p)
    }

    pub fn get(&self, x: i8, y: i8, k: usize, l: usize) -> f64 {
        let idx = |o: i8| usize::from(o != 1);
        self.p[k][l][idx(x)][idx(y)]
    }

    pub fn raw(&self) -> &[[[[f64; 2]; 2]; 2]; 2] {
        &self.p
    }

    /// Nonnegativity, normalization and no-signaling at [`BEHAVIOR_TOL`].
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidBehavior(msg));
        for k in 0..2 {
            for l in 0..2 {
                let mut total = 0.0;
                for x in OUTCOMES {
                    for y in OUTCOMES {
                        let v = self.get(x, y, k, l);
                        if !(-BEHAVIOR_TOL..=1.0 + BEHAVIOR_TOL).contains(&v) {
                            return fail(format!(
                                "p({x:+},{y:+}|{},{}) = {v} outside [0, 1]",
                                k + 1,
                                l + 1
                            ));
                        }
                        total += v;
                    }
                }
                if (total - 1.0).abs() > BEHAVIOR_TOL {
                    return fail(format!("Σ p(x,y|{},{}) = {total}", k + 1, l + 1));
                }
            }
        }
        for x in OUTCOMES {
            for k in 0..2 {
                let m0 = self.alice_marginal(x, k, 0);
                let m1 = self.alice_marginal(x, k, 1);
                if (m0 - m1).abs() > BEHAVIOR_TOL {
                    return fail(format!(
                        "Alice marginal p(x={x:+}|k={}) is {m0} with l=1 but {m1} with l=2",
                        k + 1
                    ));
                }
            }
        }
        for y in OUTCOMES {
            for l in 0..2 {
                let m0 = self.bob_marginal(y, 0, l);
                let m1 = self.bob_marginal(y, 1, l);
                if (m0 - m1).abs() > BEHAVIOR_TOL {
                    return fail(format!(
                        "Bob marginal p(y={y:+}|l={}) is {m0} with k=1 but {m1} with k=2",
                        l + 1
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn alice_marginal(&self, x: i8, k: usize, l: usize) -> f64 {
        OUTCOMES.iter().map(|&y| self.get(x, y, k, l)).sum()
    }

    pub fn bob_marginal(&self, y: i8, k: usize, l: usize) -> f64 {
        OUTCOMES.iter().map(|&x| self.get(x, y, k, l)).sum()
    }

    /// `E_kl = Σ x·y·p(x, y | k, l)`.
    pub fn correlator(&self, k: usize, l: usize) -> f64 {
        let mut e = 0.0;
        for x in OUTCOMES {
            for y in OUTCOMES {
                e += f64::from(x * y) * self.get(x, y, k, l);
            }
        }
        e
    }
}

/// `E₁₁ + E₁₂ + E₂₁ − E₂₂`.
pub fn behavior_chsh(t: &BehaviorTable) -> Result<f64> {
    t.validate()?;
    Ok(t.correlator(0, 0) + t.correlator(0, 1) + t.correlator(1, 0) - t.correlator(1, 1))
}

/// Largest of the eight CHSH expressions `±(Σ s_kl E_kl)` with one negated term.
pub fn max_chsh_symmetry(t: &BehaviorTable) -> Result<f64> {
    t.validate()?;
    let e = [
        t.correlator(0, 0),
        t.correlator(0, 1),
        t.correlator(1, 0),
        t.correlator(1, 1),
    ];
    let mut best = f64::NEG_INFINITY;
    for negated in 0..4 {
        let s: f64 = e
            .iter()
            .enumerate()
            .map(|(i, v)| if i == negated { -v } else { *v })
            .sum();
        best = best.max(s).max(-s);
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BehaviorClass {
    /// No CHSH symmetry exceeds 2.
    LocalWitnessed,
    /// Some CHSH expression exceeds 2 but none exceeds `2√2`.
    Nonlocal,
    /// Some CHSH expression exceeds `2√2`.
    SupraQuantum,
}

impl BehaviorClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::LocalWitnessed => "local-witnessed",
            Self::Nonlocal => "nonlocal",
            Self::SupraQuantum => "supra-quantum",
        }
    }
}

impl std::fmt::Display for BehaviorClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Regime of a behavior by its best CHSH symmetry.
///
/// This is a witness test on the eight CHSH expressions only; no other
/// facets of the local polytope are checked.
pub fn classify_behavior(t: &BehaviorTable) -> Result<BehaviorClass> {
    let v = max_chsh_symmetry(t)?;
    Ok(if v <= 2.0 + CLASSIFY_TOL {
        BehaviorClass::LocalWitnessed
    } else if v <= TSIRELSON_BOUND + CLASSIFY_TOL {
        BehaviorClass::Nonlocal
    } else {
        BehaviorClass::SupraQuantum
    })
}

/// `a₁b₁ + b₁a₁ + a₁b₂ + b₂a₁ + a₂b₁ + b₁a₂ − a₂b₂ − b₂a₂`.
pub fn symmetrized_chsh_operator(
    a: &[HermitianMatrix; 2],
    b: &[HermitianMatrix; 2],
) -> Result<HermitianMatrix> {
    let anti = |x: &HermitianMatrix, y: &HermitianMatrix| -> Result<ComplexMatrix> {
        Ok(&x.matrix().mat_mul(y.matrix())? + &y.matrix().mat_mul(x.matrix())?)
    };
    let sum = &(&anti(&a[0], &b[0])? + &anti(&a[0], &b[1])?) + &anti(&a[1], &b[0])?;
    let total = &sum - &anti(&a[1], &b[1])?;
    HermitianMatrix::hermitian_part(&total)
}

#[derive(Clone, Debug)]
pub struct InequalityReport {
    pub seed: u64,
    pub samples: usize,
    pub dim: usize,
    pub max_witnessed: f64,
    pub min_witnessed: f64,
    pub bound: f64,
    /// Samples with an eigenvalue outside `[−4√2 − tol, 4√2 + tol]`.
    pub violations: usize,
}

impl InequalityReport {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// Extreme eigenvalues of the symmetrized CHSH operator for one quadruple.
pub fn inequality_extremes(
    a: &[HermitianMatrix; 2],
    b: &[HermitianMatrix; 2],
) -> Result<(f64, f64)> {
    let e = symmetrized_chsh_operator(a, b)?.eig()?;
    Ok((*e.values.last().expect("non-empty"), e.values[0]))
}

/// Sample `index` of a numeric check: four unit-norm Hermitian matrices of dimension `dim`.
pub fn inequality_sample(seed: u64, index: u64, dim: usize) -> Result<(f64, f64)> {
    let mut rng = sample_rng(seed, index);
    let mut draw = || random_unit_observable(&mut rng, dim);
    let a = [draw(), draw()];
    let b = [draw(), draw()];
    inequality_extremes(&a, &b)
}

/// Fold per-sample extremes into a report.
pub fn summarize_inequality(seed: u64, dim: usize, extremes: &[(f64, f64)]) -> InequalityReport {
    let bound = 2.0 * TSIRELSON_BOUND;
    let mut report = InequalityReport {
        seed,
        samples: extremes.len(),
        dim,
        max_witnessed: f64::NEG_INFINITY,
        min_witnessed: f64::INFINITY,
        bound,
        violations: 0,
    };
    for &(lo, hi) in extremes {
        report.max_witnessed = report.max_witnessed.max(hi);
        report.min_witnessed = report.min_witnessed.min(lo);
        if hi > bound + INEQUALITY_TOL || lo < -bound - INEQUALITY_TOL {
            report.violations += 1;
        }
    }
    report
}

/// Check every eigenvalue of the symmetrized operator lies within `±4√2` on random samples.
pub fn verify_inequality_numeric(
    samples: usize,
    dim: usize,
    seed: u64,
) -> Result<InequalityReport> {
    if dim < 2 {
        return Err(Error::InvalidArgument(format!("dimension {dim} < 2")));
    }
    let extremes = (0..samples as u64)
        .map(|i| inequality_sample(seed, i, dim))
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize_inequality(seed, dim, &extremes))
}

/// The optimal qubit observables embedded as `a_k⊗𝕀` and `𝕀⊗b_l` on `ℂ⁴`.
pub fn embedded_optimal_observables() -> ([HermitianMatrix; 2], [HermitianMatrix; 2]) {
    let s = optimal_qubit_scenario();
    let id = HermitianMatrix::identity(2);
    (
        [s.alice[0].kron(&id), s.alice[1].kron(&id)],
        [id.kron(&s.bob[0]), id.kron(&s.bob[1])],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::pauli;
    use num_complex::Complex64;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn z_scenario(state: State) -> CorrelationScenario {
        let z = pauli::z();
        CorrelationScenario::new((2, 2), state, [z.clone(), z.clone()], [z.clone(), z]).unwrap()
    }

    fn singlet() -> State {
        State::pure(&[c(0.0), c(1.0), c(-1.0), c(0.0)]).unwrap()
    }

    #[test]
    fn correlation_examples() {
        let s = z_scenario(State::pure(&[c(1.0), c(0.0), c(0.0), c(0.0)]).unwrap());
        assert_eq!(s.correlation(0, 0).unwrap(), 1.0);
        // ⟨ψ⁻|σz⊗σz|ψ⁻⟩: the two nonzero amplitudes sit on |01⟩, |10⟩ where σz⊗σz = −1.
        let s = z_scenario(singlet());
        assert!((s.correlation(0, 0).unwrap() + 1.0).abs() < 1e-15);
        let s = CorrelationScenario::new(
            (2, 3),
            State::maximally_mixed(6),
            [pauli::x(), pauli::z()],
            [
                HermitianMatrix::diagonal(&[1.0, -1.0, 0.0]),
                HermitianMatrix::diagonal(&[0.5, 0.0, -0.5]),
            ],
        )
        .unwrap();
        for (k, l) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert!(s.correlation(k, l).unwrap().abs() < 1e-15);
        }
        assert!(s.correlation(2, 0).is_err());
    }

    #[test]
    fn scenario_rejects_large_spectra_and_bad_dims() {
        let big = HermitianMatrix::diagonal(&[1.5, 0.0]);
        let z = pauli::z();
        let r =
            CorrelationScenario::new((2, 2), singlet(), [big, z.clone()], [z.clone(), z.clone()]);
        assert!(matches!(r, Err(Error::SpectrumOutOfRange(_))));
        let r = CorrelationScenario::new((2, 3), singlet(), [z.clone(), z.clone()], [z.clone(), z]);
        assert!(matches!(r, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn chsh_examples() {
        let s = z_scenario(State::pure(&[c(1.0), c(0.0), c(0.0), c(0.0)]).unwrap());
        assert_eq!(s.chsh_value().unwrap(), 2.0);
        let v = optimal_qubit_scenario().chsh_value().unwrap();
        assert!((v - TSIRELSON_BOUND).abs() < 1e-9);
        let mut s = optimal_qubit_scenario();
        s = s.with_state(State::maximally_mixed(4)).unwrap();
        assert!(s.chsh_value().unwrap().abs() < 1e-15);
    }

    #[test]
    fn classical_examples() {
        let (v, w) = classical_max();
        assert_eq!(v, 2);
        assert_eq!(w.chsh(), 2);
        assert_eq!(
            DeterministicStrategy {
                a: [1, 1],
                b: [1, 1]
            }
            .chsh(),
            2
        );
        assert_eq!(classical_min().0, -2);
        assert_eq!(DeterministicStrategy::all().count(), 16);
    }

    #[test]
    fn seesaw_reaches_tsirelson_for_qubits() {
        let r = seesaw_optimize(&SeesawConfig::new(2, 2, 7)).unwrap();
        assert!(r.converged);
        assert!((r.value - TSIRELSON_BOUND).abs() < 1e-6, "{}", r.value);
        assert!(r.trace.windows(2).all(|w| w[1] >= w[0] - 1e-12));
        assert!((r.scenario.chsh_value().unwrap() - r.value).abs() < 1e-9);
    }

    #[test]
    fn seesaw_from_commuting_start_is_monotone() {
        let z = pauli::z();
        let r = seesaw_from([z.clone(), z.clone()], [z.clone(), z], 1e-10, 500).unwrap();
        assert!(r.trace[0] >= 2.0 - 1e-12);
        assert!(r.value >= 2.0 - 1e-12);
        assert!(r.trace.windows(2).all(|w| w[1] >= w[0] - 1e-12));
    }

    #[test]
    fn seesaw_respects_bound_for_qutrits() {
        for seed in 0..3 {
            let r = seesaw_optimize(&SeesawConfig::new(3, 3, seed)).unwrap();
            assert!(r.value <= TSIRELSON_BOUND + 1e-9);
            assert!(r.trace.windows(2).all(|w| w[1] >= w[0] - 1e-12));
        }
        assert!(seesaw_optimize(&SeesawConfig::new(1, 2, 0)).is_err());
    }

    #[test]
    fn seesaw_flags_iteration_cap() {
        let mut cfg = SeesawConfig::new(2, 2, 3);
        cfg.max_iters = 1;
        let r = seesaw_optimize(&cfg).unwrap();
        assert!(!r.converged);
        assert_eq!(r.iterations, 1);
    }

    #[test]
    fn behavior_examples() {
        let pr = BehaviorTable::pr_box();
        assert_eq!(behavior_chsh(&pr).unwrap(), 4.0);
        assert_eq!(classify_behavior(&pr).unwrap(), BehaviorClass::SupraQuantum);
        assert_eq!(behavior_chsh(&BehaviorTable::uniform()).unwrap(), 0.0);
        let local = BehaviorTable::local();
        assert_eq!(behavior_chsh(&local).unwrap(), 2.0);
        assert_eq!(
            classify_behavior(&local).unwrap(),
            BehaviorClass::LocalWitnessed
        );
        let q = BehaviorTable::from_scenario(&optimal_qubit_scenario()).unwrap();
        assert!((behavior_chsh(&q).unwrap() - TSIRELSON_BOUND).abs() < 1e-9);
        assert_eq!(classify_behavior(&q).unwrap(), BehaviorClass::Nonlocal);
    }

    #[test]
    fn signaling_table_rejected() {
        // Alice's output copies Bob's setting.
        let r = BehaviorTable::from_fn(|x, y, _k, l| {
            let want = if l == 0 { 1 } else { -1 };
            if x == want {
                0.5 * f64::from(u8::from(y == 1 || y == -1))
            } else {
                0.0
            }
        });
        match r {
            Err(Error::InvalidBehavior(msg)) => assert!(msg.contains("Alice marginal"), "{msg}"),
            other => panic!("expected rejection, got {other:?}"),
        }
        let r = BehaviorTable::from_fn(|_, _, _, _| 0.3);
        assert!(matches!(r, Err(Error::InvalidBehavior(_))));
    }

    #[test]
    fn mixing_is_linear() {
        let pr = BehaviorTable::pr_box();
        let u = BehaviorTable::uniform();
        for lambda in [0.0, 0.25, 0.5, 0.8, 1.0] {
            let m = pr.mix(lambda, &u).unwrap();
            let v = behavior_chsh(&m).unwrap();
            assert!((v - 4.0 * lambda).abs() < 1e-12);
        }
        assert!(pr.mix(1.5, &u).is_err());
        assert_eq!(behavior_chsh(&pr.mix(0.5, &u).unwrap()).unwrap(), 2.0);
    }

    #[test]
    fn swapping_parties_transposes_correlations() {
        let mut rng = sample_rng(21, 0);
        for dims in [(2, 2), (2, 3), (3, 2)] {
            let s = random_scenario(&mut rng, dims).unwrap();
            let t = s.swapped().unwrap();
            for k in 0..2 {
                for l in 0..2 {
                    let a = s.correlation(k, l).unwrap();
                    let b = t.correlation(l, k).unwrap();
                    assert!((a - b).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn inequality_examples() {
        let id = HermitianMatrix::identity(3);
        let a = [id.clone(), id.clone()];
        let op = symmetrized_chsh_operator(&a, &a).unwrap();
        assert!((op.matrix() - &ComplexMatrix::identity(3).scale_real(4.0)).max_abs() < 1e-15);
        let (lo, hi) = inequality_extremes(&a, &a).unwrap();
        // a₁=a₂=b₁=b₂=𝕀 gives 2+2+2−2 = 4, i.e. twice the commuting CHSH value 2.
        assert_eq!((lo, hi), (4.0, 4.0));

        let (a, b) = embedded_optimal_observables();
        let (_, hi) = inequality_extremes(&a, &b).unwrap();
        assert!((hi - 4.0 * std::f64::consts::SQRT_2).abs() < 1e-9);

        let r = verify_inequality_numeric(500, 4, 9).unwrap();
        assert!(r.holds());
        assert!(r.max_witnessed <= r.bound + 1e-9 && r.min_witnessed >= -r.bound - 1e-9);
        assert!(verify_inequality_numeric(1, 1, 0).is_err());
    }
}
