//! Degree-2 truncation of the free bilinear algebra on `a₁, a₂, b₁, b₂`
//! over `ℚ(√2)`.
//!
//! The product `x□y` is only assumed bilinear: no commutativity, no
//! associativity, no power-associativity. Monomials `x□y` and `y□x` are
//! distinct. An identity that cancels here therefore holds for every
//! bilinear product, in particular for the matrix product.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HermitianMatrix};
use crate::scalar::ExactScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    A1,
    A2,
    B1,
    B2,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::A1, Generator::A2, Generator::B1, Generator::B2];

    pub fn name(&self) -> &'static str {
        match self {
            Generator::A1 => "a1",
            Generator::A2 => "a2",
            Generator::B1 => "b1",
            Generator::B2 => "b2",
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Generators sort before products; products sort lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Monomial {
    Gen(Generator),
    Product(Generator, Generator),
}

impl Monomial {
    pub fn degree(&self) -> usize {
        match self {
            Monomial::Gen(_) => 1,
            Monomial::Product(..) => 2,
        }
    }

    /// The 16 ordered products `x□y`.
    pub fn all_products() -> impl Iterator<Item = Monomial> {
        Generator::ALL.into_iter().flat_map(|x| {
            Generator::ALL
                .into_iter()
                .map(move |y| Monomial::Product(x, y))
        })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Monomial::Gen(g) => f.pad(g.name()),
            Monomial::Product(x, y) => f.pad(&format!("{x}□{y}")),
        }
    }
}

/// Finite linear combination of monomials; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeElement {
    terms: BTreeMap<Monomial, ExactScalar>,
}

impl FreeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(g: Generator) -> Self {
        Self::monomial(Monomial::Gen(g), ExactScalar::one())
    }

    pub fn monomial(m: Monomial, coeff: ExactScalar) -> Self {
        let mut e = Self::zero();
        e.add_term(m, &coeff);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> ExactScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: &ExactScalar) {
        let slot = self.terms.entry(m).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, k: &ExactScalar) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&ExactScalar::from_int(-1))
    }

    /// Bilinear product of two degree-1 elements: `(Σ αᵢgᵢ)□(Σ βⱼgⱼ) = Σ αᵢβⱼ (gᵢ□gⱼ)`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let (left, right) = (self.linear_part()?, other.linear_part()?);
        let mut out = Self::zero();
        for (x, a) in &left {
            for (y, b) in &right {
                out.add_term(Monomial::Product(*x, *y), &(a * b));
            }
        }
        Ok(out)
    }

    /// `x□x`.
    pub fn square(&self) -> Result<Self> {
        self.product(self)
    }

    fn linear_part(&self) -> Result<Vec<(Generator, ExactScalar)>> {
        self.terms
            .iter()
            .map(|(m, c)| match m {
                Monomial::Gen(g) => Ok((*g, c.clone())),
                Monomial::Product(..) => Err(Error::FreeAlgebra(format!(
                    "product of an element containing the degree-2 monomial {m}"
                ))),
            })
            .collect()
    }

    /// Replace each generator by a degree-1 element (e.g. `a₁ ↦ −a₁`).
    /// Only defined on degree-1 elements.
    pub fn substitute_linear(&self, map: impl Fn(Generator) -> FreeElement) -> Result<Self> {
        let mut out = Self::zero();
        for (g, c) in self.linear_part()? {
            let image = map(g);
            if image.max_degree() > 1 {
                return Err(Error::FreeAlgebra(format!("image of {g} is not degree 1")));
            }
            out = out.add(&image.scale(&c));
        }
        Ok(out)
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("({c})·{m}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `Σ cᵢ·xᵢ`, exact and canonical.
pub fn fe_linear(ops: &[(ExactScalar, &FreeElement)]) -> FreeElement {
    ops.iter()
        .fold(FreeElement::zero(), |acc, (c, x)| acc.add(&x.scale(c)))
}

/// Matrices standing in for the generators.
#[derive(Clone, Debug, Default)]
pub struct Assignment {
    map: BTreeMap<Generator, HermitianMatrix>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, g: Generator, m: HermitianMatrix) -> Self {
        self.map.insert(g, m);
        self
    }

    pub fn quadruple(a: &[HermitianMatrix; 2], b: &[HermitianMatrix; 2]) -> Self {
        Self::new()
            .with(Generator::A1, a[0].clone())
            .with(Generator::A2, a[1].clone())
            .with(Generator::B1, b[0].clone())
            .with(Generator::B2, b[1].clone())
    }

    fn get(&self, g: Generator) -> Result<&ComplexMatrix> {
        self.map
            .get(&g)
            .map(HermitianMatrix::matrix)
            .ok_or_else(|| Error::FreeAlgebra(format!("no matrix assigned to {g}")))
    }
}

/// Evaluate `x` with `□` as the matrix product and coefficients in floating point.
pub fn fe_substitute(x: &FreeElement, assignment: &Assignment) -> Result<ComplexMatrix> {
    let Some(dim) = assignment.map.values().next().map(HermitianMatrix::dim) else {
        return Err(Error::FreeAlgebra("empty assignment".into()));
    };
    if assignment.map.values().any(|m| m.dim() != dim) {
        return Err(Error::DimensionMismatch(
            "assigned matrices differ in dimension".into(),
        ));
    }
    let mut acc = ComplexMatrix::zeros(dim, dim);
    for (m, c) in x.terms() {
        let value = match m {
            Monomial::Gen(g) => assignment.get(*g)?.clone(),
            Monomial::Product(p, q) => assignment.get(*p)?.mat_mul(assignment.get(*q)?)?,
        };
        acc = acc.checked_add(&value.scale_real(c.to_f64()))?;
    }
    Ok(acc)
}

fn g(x: Generator) -> FreeElement {
    FreeElement::generator(x)
}

fn es(r: i64, s: i64) -> ExactScalar {
    ExactScalar::from_ints(r, s)
}

/// `x□y + y□x` for degree-1 elements.
pub fn anticommutator(x: &FreeElement, y: &FreeElement) -> Result<FreeElement> {
    Ok(x.product(y)?.add(&y.product(x)?))
}

/// `a₁□b₁ + b₁□a₁ + a₁□b₂ + b₂□a₁ + a₂□b₁ + b₁□a₂ − a₂□b₂ − b₂□a₂` for the given degree-1 elements.
pub fn symmetrized_chsh(
    a1: &FreeElement,
    a2: &FreeElement,
    b1: &FreeElement,
    b2: &FreeElement,
) -> Result<FreeElement> {
    Ok(anticommutator(a1, b1)?
        .add(&anticommutator(a1, b2)?)
        .add(&anticommutator(a2, b1)?)
        .sub(&anticommutator(a2, b2)?))
}

/// The four degree-1 elements whose squares sum to the certificate.
pub fn sos_terms() -> [FreeElement; 4] {
    use Generator::*;
    let r = es(1, 1); // 1 + √2
    let one = ExactScalar::one();
    let m1 = ExactScalar::from_int(-1);
    [
        fe_linear(&[
            (r.clone(), &g(A1)),
            (-&r, &g(B1)),
            (one.clone(), &g(A2)),
            (m1.clone(), &g(B2)),
        ]),
        fe_linear(&[
            (r.clone(), &g(A1)),
            (-&r, &g(B2)),
            (m1.clone(), &g(A2)),
            (m1.clone(), &g(B1)),
        ]),
        fe_linear(&[
            (r.clone(), &g(A2)),
            (-&r, &g(B1)),
            (one.clone(), &g(A1)),
            (one.clone(), &g(B2)),
        ]),
        fe_linear(&[
            (r.clone(), &g(A2)),
            (r.clone(), &g(B2)),
            (m1.clone(), &g(A1)),
            (m1, &g(B1)),
        ]),
    ]
}

/// Which side of the operator inequality the certificate proves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SosVariant {
    /// Upper bound: the squares as written.
    Upper,
    /// Lower bound: `a₁ ↦ −a₁`, `a₂ ↦ −a₂` in the squares and the right-hand side.
    SignFlipped,
}

/// One degree-2 coefficient slot of the identity report.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientRow {
    pub monomial: Monomial,
    pub lhs: ExactScalar,
    pub rhs: ExactScalar,
    pub difference: ExactScalar,
}

#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub variant: SosVariant,
    pub lhs: FreeElement,
    pub rhs: FreeElement,
    pub difference: FreeElement,
    /// All 16 ordered products, in monomial order.
    pub rows: Vec<CoefficientRow>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.difference.is_zero()
    }
}

/// Expand the sum of the four squares and subtract
/// `4(2+√2)(a₁² + a₂² + b₁² + b₂²) − 4(1+√2)·CHSH□`, exactly.
pub fn verify_sos_identity_variant(variant: SosVariant) -> IdentityReport {
    use Generator::*;
    let flip = |x: Generator| match (variant, x) {
        (SosVariant::SignFlipped, A1 | A2) => g(x).neg(),
        _ => g(x),
    };
    let mut lhs = FreeElement::zero();
    for t in sos_terms() {
        let t = t.substitute_linear(flip).expect("degree-1 terms");
        lhs = lhs.add(&t.square().expect("degree-1 terms"));
    }
    let (a1, a2, b1, b2) = (flip(A1), flip(A2), flip(B1), flip(B2));
    let squares = [&a1, &a2, &b1, &b2]
        .iter()
        .map(|x| x.square().expect("degree-1"))
        .fold(FreeElement::zero(), |acc, s| acc.add(&s));
    let chsh = symmetrized_chsh(&a1, &a2, &b1, &b2).expect("degree-1");
    let rhs = fe_linear(&[(es(8, 4), &squares), (es(-4, -4), &chsh)]);
    let difference = lhs.sub(&rhs);
    let rows = Monomial::all_products()
        .map(|m| CoefficientRow {
            monomial: m,
            lhs: lhs.coefficient(&m),
            rhs: rhs.coefficient(&m),
            difference: difference.coefficient(&m),
        })
        .collect();
    IdentityReport {
        variant,
        lhs,
        rhs,
        difference,
        rows,
    }
}

/// The sum-of-squares certificate for the upper CHSH operator bound.
pub fn verify_sos_identity() -> IdentityReport {
    verify_sos_identity_variant(SosVariant::Upper)
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let title = match self.variant {
            SosVariant::Upper => "upper bound",
            SosVariant::SignFlipped => "lower bound (a1 -> -a1, a2 -> -a2)",
        };
        writeln!(f, "sum-of-squares identity, {title}")?;
        writeln!(
            f,
            "{:<8}  {:<14}  {:<14}  difference",
            "monomial", "lhs", "rhs"
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "{:<8}  {:<14}  {:<14}  {}",
                r.monomial, r.lhs, r.rhs, r.difference
            )?;
        }
        let cancelled = self.rows.iter().filter(|r| r.difference.is_zero()).count();
        writeln!(f, "cancelled {cancelled}/{} slots", self.rows.len())?;
        write!(f, "identity holds: {}", self.holds())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::pauli;
    use crate::random::{random_hermitian, random_unit_observable, sample_rng};
    use proptest::prelude::*;
    use Generator::*;

    fn prod(x: Generator, y: Generator) -> Monomial {
        Monomial::Product(x, y)
    }

    #[test]
    fn linear_combination_examples() {
        let z = fe_linear(&[
            (ExactScalar::one(), &g(A1)),
            (ExactScalar::from_int(-1), &g(A1)),
        ]);
        assert!(z.is_zero());
        let diff = g(A1).sub(&g(B1));
        let x = fe_linear(&[(es(1, 1), &diff)]);
        assert_eq!(x.coefficient(&Monomial::Gen(A1)), es(1, 1));
        assert_eq!(x.coefficient(&Monomial::Gen(B1)), es(-1, -1));
        let y = g(B2).add(&g(A2));
        assert_eq!(FreeElement::zero().add(&y), y);
    }

    #[test]
    fn square_examples() {
        assert_eq!(
            g(A1).square().unwrap(),
            FreeElement::monomial(prod(A1, A1), ExactScalar::one())
        );
        let s = g(A1).add(&g(B1)).square().unwrap();
        for m in [prod(A1, A1), prod(A1, B1), prod(B1, A1), prod(B1, B1)] {
            assert_eq!(s.coefficient(&m), ExactScalar::one());
        }
        assert_eq!(s.terms().count(), 4);
        let first = &sos_terms()[0];
        // (1+√2)² = 3 + 2√2
        assert_eq!(first.square().unwrap().coefficient(&prod(A1, A1)), es(3, 2));
    }

    #[test]
    fn square_of_degree_two_is_an_error() {
        let q = g(A1).square().unwrap();
        assert!(matches!(q.square(), Err(Error::FreeAlgebra(_))));
    }

    #[test]
    fn identity_holds_exactly() {
        let r = verify_sos_identity();
        assert!(r.holds(), "{r}");
        assert_eq!(r.rows.len(), 16);
        assert!(r
            .rows
            .iter()
            .all(|row| row.difference.is_zero() && row.lhs == row.rhs));
        // (3+2√2) + (3+2√2) + 1 + 1 from the four squares; 4(2+√2) on the right.
        let aa = r
            .rows
            .iter()
            .find(|row| row.monomial == prod(A1, A1))
            .unwrap();
        assert_eq!(aa.lhs, es(8, 4));
        assert_eq!(aa.rhs, es(8, 4));
        let ab = r
            .rows
            .iter()
            .find(|row| row.monomial == prod(A1, B1))
            .unwrap();
        assert_eq!(ab.lhs, es(-4, -4));
        assert_eq!(ab.rhs, es(-4, -4));
        let a2b2 = r
            .rows
            .iter()
            .find(|row| row.monomial == prod(A2, B2))
            .unwrap();
        assert_eq!(a2b2.rhs, es(4, 4));
    }

    #[test]
    fn sign_flipped_identity_holds_exactly() {
        let r = verify_sos_identity_variant(SosVariant::SignFlipped);
        assert!(r.holds(), "{r}");
        let ab = r
            .rows
            .iter()
            .find(|row| row.monomial == prod(A1, B1))
            .unwrap();
        assert_eq!(ab.rhs, es(4, 4));
    }

    #[test]
    fn perturbed_identity_fails() {
        let r = verify_sos_identity();
        let tweaked = r.rhs.add(&FreeElement::monomial(
            prod(B2, A1),
            ExactScalar::from_fractions(0, 1, 1, 1000),
        ));
        assert!(!r.lhs.sub(&tweaked).is_zero());
    }

    #[test]
    fn report_lists_every_slot() {
        let text = verify_sos_identity().to_string();
        assert!(text.contains("a1□a1     8 + 4√2"), "{text}");
        assert!(text.contains("cancelled 16/16 slots"));
        assert!(text.ends_with("identity holds: true"));
    }

    #[test]
    fn substitute_examples() {
        let x = FreeElement::monomial(prod(A1, A1), ExactScalar::one());
        let m = fe_substitute(&x, &Assignment::new().with(A1, pauli::x())).unwrap();
        assert!((&m - &ComplexMatrix::identity(2)).max_abs() < 1e-15);
        assert!(fe_substitute(&x, &Assignment::new().with(B1, pauli::x())).is_err());
        let bad = Assignment::new()
            .with(A1, pauli::x())
            .with(B1, HermitianMatrix::identity(3));
        assert!(matches!(
            fe_substitute(&x, &bad),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn substituted_difference_vanishes() {
        let diff = verify_sos_identity().lhs.sub(&verify_sos_identity().rhs);
        assert!(diff.is_zero());
        // Evaluate both sides separately so the check is not vacuous.
        for seed in 0..50 {
            let mut rng = sample_rng(seed, 31);
            let n = 2 + seed as usize % 4;
            let a = [random_hermitian(&mut rng, n), random_hermitian(&mut rng, n)];
            let b = [random_hermitian(&mut rng, n), random_hermitian(&mut rng, n)];
            let asg = Assignment::quadruple(&a, &b);
            for variant in [SosVariant::Upper, SosVariant::SignFlipped] {
                let r = verify_sos_identity_variant(variant);
                let l = fe_substitute(&r.lhs, &asg).unwrap();
                let rr = fe_substitute(&r.rhs, &asg).unwrap();
                assert!((&l - &rr).max_abs() < 1e-8);
            }
        }
    }

    #[test]
    fn sum_of_squares_of_contractions_is_at_most_four() {
        let squares = [A1, A2, B1, B2]
            .iter()
            .map(|&x| g(x).square().unwrap())
            .fold(FreeElement::zero(), |acc, s| acc.add(&s));
        for seed in 0..50 {
            let mut rng = sample_rng(seed, 32);
            let mut draw = || random_unit_observable(&mut rng, 3);
            let asg = Assignment::quadruple(&[draw(), draw()], &[draw(), draw()]);
            let m = fe_substitute(&squares, &asg).unwrap();
            let top = HermitianMatrix::hermitian_part(&m)
                .unwrap()
                .max_eigenvalue()
                .unwrap();
            assert!(top <= 4.0 + 1e-9);
        }
    }

    fn small_scalar() -> impl Strategy<Value = ExactScalar> {
        (-5i64..=5, 1i64..4, -5i64..=5, 1i64..4)
            .prop_map(|(p, q, r, s)| ExactScalar::from_fractions(p, q, r, s))
    }

    fn linear_element() -> impl Strategy<Value = FreeElement> {
        proptest::collection::vec(small_scalar(), 4).prop_map(|cs| {
            let ops: Vec<(ExactScalar, FreeElement)> = cs
                .into_iter()
                .zip(Generator::ALL)
                .map(|(c, x)| (c, g(x)))
                .collect();
            let refs: Vec<(ExactScalar, &FreeElement)> =
                ops.iter().map(|(c, x)| (c.clone(), x)).collect();
            fe_linear(&refs)
        })
    }

    proptest! {
        #[test]
        fn product_is_bilinear(x in linear_element(), y in linear_element(), z in linear_element(),
                               s in small_scalar(), t in small_scalar()) {
            let comb = fe_linear(&[(s.clone(), &x), (t.clone(), &y)]);
            let left = comb.product(&z).unwrap();
            let expanded = fe_linear(&[(s.clone(), &x.product(&z).unwrap()), (t.clone(), &y.product(&z).unwrap())]);
            prop_assert_eq!(left, expanded);
            let right = z.product(&comb).unwrap();
            let expanded = fe_linear(&[(s, &z.product(&x).unwrap()), (t, &z.product(&y).unwrap())]);
            prop_assert_eq!(right, expanded);
        }

        #[test]
        fn square_of_sum_keeps_cross_terms_ordered(x in linear_element(), y in linear_element()) {
            let lhs = x.add(&y).square().unwrap();
            let rhs = x.square().unwrap()
                .add(&x.product(&y).unwrap())
                .add(&y.product(&x).unwrap())
                .add(&y.square().unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
