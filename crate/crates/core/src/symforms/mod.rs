//! Twisted k-symmetric 1-forms on projective space in homogeneous coordinates.
//!
//! A k-web of degree `d` on `P^N` is written as
//! `ω = Σ_{|I|=k} A_I(x) dx_0^{i_0} ⋯ dx_N^{i_N}` with every `A_I` homogeneous
//! of degree `d + k`. A [`SymForm`] stores the map `I ↦ A_I`; the
//! differential multi-index `I` reuses [`Monomial`] so it shares the
//! canonical order of the polynomial code.
//!
//! Internally most operations go through the *bigraded* view: the form as a
//! single polynomial in `x_0..x_N, dx_0..dx_N`, homogeneous of degree `k` in
//! the differentials. Pullback, contraction and Lie derivative are then
//! substitutions and derivations on one polynomial.

mod field;
pub mod json;
mod ops;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::exactalg::{
    default_var_names, gcd_all, monomials_of_degree, parse_polynomial, AlgError, Monomial,
    Polynomial,
};
use crate::scalar::Field;

pub use field::VectorField;
pub use ops::{default_sample_points, BinaryForm, SAMPLE_COORDINATES};
pub(crate) use ops::format_point;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("malformed form: {0}")]
    Shape(String),
    #[error("the zero form defines no web")]
    ZeroForm,
    #[error("coefficient of {dmono:?} is not homogeneous")]
    CoefficientNotHomogeneous { dmono: Vec<u32> },
    #[error("coefficients have different degrees ({first} and {other})")]
    CoefficientDegreeMismatch { first: u32, other: u32 },
    #[error("coefficient degree {degree} is below k = {k}")]
    DegreeBelowK { degree: u32, k: u32 },
    #[error("Euler contraction i_R(ω) = {0} is not zero")]
    EulerContractionNonzero(String),
    #[error("coefficients share the common factor {0}")]
    CommonFactor(String),
    #[error("operation requires k = 1, got k = {0}")]
    RequiresFoliation(u32),
    #[error("vector field has {found} components, expected {expected}")]
    FieldLength { expected: usize, found: usize },
    #[error("vector field components are not homogeneous of one degree")]
    InhomogeneousField,
    #[error("vector field is not linear (degree {0:?}); it need not descend to projective space")]
    NonlinearField(Option<u32>),
    #[error("points do not span a line")]
    DegenerateLine,
    #[error("non-generic line: {0}")]
    NonGenericLine(String),
    #[error("point {0} lies in the singular set")]
    SingularPoint(String),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

impl FormError {
    /// Stable identifier for the violated invariant or failure.
    pub fn name(&self) -> &'static str {
        match self {
            FormError::Shape(_) => "malformed_form",
            FormError::ZeroForm => "zero_form",
            FormError::CoefficientNotHomogeneous { .. } => "coefficient_not_homogeneous",
            FormError::CoefficientDegreeMismatch { .. } => "coefficient_degree_mismatch",
            FormError::DegreeBelowK { .. } => "degree_below_k",
            FormError::EulerContractionNonzero(_) => "euler_contraction_nonzero",
            FormError::CommonFactor(_) => "common_factor",
            FormError::RequiresFoliation(_) => "requires_k_1",
            FormError::FieldLength { .. } => "field_length",
            FormError::InhomogeneousField => "inhomogeneous_field",
            FormError::NonlinearField(_) => "nonlinear_field",
            FormError::DegenerateLine => "degenerate_line",
            FormError::SingularPoint(_) => "singular_point",
            FormError::NonGenericLine(_) => "non_generic_line",
            FormError::Alg(_) => "algebra",
        }
    }

    /// True for failures of the input itself rather than of a computation on valid input.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, FormError::NonGenericLine(_))
    }
}

/// Degree data of a web.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WebDegree {
    pub n: usize,
    pub k: u32,
    /// Degree of the web: tangencies with a generic line.
    pub d: u32,
    /// `deg K_F = d - 1` for a foliation (`k = 1`) on the projective plane.
    pub kf_degree: Option<i64>,
}

/// A symmetric k-form `Σ A_I dx^I` on `P^n` in homogeneous coordinates.
///
/// [`SymForm::raw`] only checks shape, so intermediate results (pullbacks,
/// Lie derivatives, contractions) use the same type. [`SymForm::new`] and
/// [`SymForm::validate`] enforce the web invariants.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymForm<F> {
    n: usize,
    k: u32,
    coeffs: BTreeMap<Monomial, Polynomial<F>>,
}

impl<F: Field> SymForm<F> {
    /// A form with shape checks only: multi-indices of length `n + 1` summing
    /// to `k`, coefficients in `n + 1` variables. Repeated indices are summed.
    pub fn raw<I>(n: usize, k: u32, coeffs: I) -> Result<Self, FormError>
    where
        I: IntoIterator<Item = (Vec<u32>, Polynomial<F>)>,
    {
        let mut out = SymForm { n, k, coeffs: BTreeMap::new() };
        for (dmono, poly) in coeffs {
            if dmono.len() != n + 1 {
                return Err(FormError::Shape(format!(
                    "multi-index {dmono:?} should have {} entries",
                    n + 1
                )));
            }
            if dmono.iter().sum::<u32>() != k {
                return Err(FormError::Shape(format!("multi-index {dmono:?} does not sum to k = {k}")));
            }
            if poly.nvars() != n + 1 {
                return Err(FormError::Shape(format!(
                    "coefficient of {dmono:?} has {} variables, expected {}",
                    poly.nvars(),
                    n + 1
                )));
            }
            out.add_coefficient(Monomial::new(dmono), poly);
        }
        Ok(out)
    }

    /// A validated web: see [`SymForm::validate`].
    pub fn new<I>(n: usize, k: u32, coeffs: I) -> Result<Self, FormError>
    where
        I: IntoIterator<Item = (Vec<u32>, Polynomial<F>)>,
    {
        let form = Self::raw(n, k, coeffs)?;
        form.validate()?;
        Ok(form)
    }

    pub fn zero(n: usize, k: u32) -> Self {
        SymForm { n, k, coeffs: BTreeMap::new() }
    }

    /// Parses a form written with differentials, e.g. `"x*dy - y*dx"`.
    ///
    /// Variables are `x, y, z, w` for `n <= 3` and `x0..xn` otherwise; the
    /// differentials prefix `d`. `k` is read off the expression.
    pub fn parse(n: usize, text: &str) -> Result<Self, FormError> {
        let names = bigraded_names(n);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let poly = parse_polynomial::<F>(text, &refs)?;
        let k = poly
            .terms()
            .map(|(m, _)| m.exponents()[n + 1..].iter().sum::<u32>())
            .next()
            .ok_or(FormError::ZeroForm)?;
        Self::from_bigraded(n, k, &poly)
    }

    /// Inverse of [`SymForm::to_bigraded`]; fails unless every term has differential degree `k`.
    pub fn from_bigraded(n: usize, k: u32, poly: &Polynomial<F>) -> Result<Self, FormError> {
        if poly.nvars() != 2 * (n + 1) {
            return Err(FormError::Shape(format!(
                "bigraded polynomial has {} variables, expected {}",
                poly.nvars(),
                2 * (n + 1)
            )));
        }
        let parts = poly.split_tail(n + 1);
        Self::raw(n, k, parts.into_iter().map(|(m, p)| (m.into_inner(), p)))
    }

    /// The form as one polynomial in `x_0..x_n, dx_0..dx_n`.
    pub fn to_bigraded(&self) -> Polynomial<F> {
        let nv = 2 * (self.n + 1);
        let mut out = Polynomial::zero(nv);
        for (dmono, a) in &self.coeffs {
            for (m, c) in a.terms() {
                let e: Vec<u32> = m.exponents().iter().chain(dmono.exponents()).copied().collect();
                out.add_term(Monomial::new(e), c.clone());
            }
        }
        out
    }

    fn add_coefficient(&mut self, dmono: Monomial, poly: Polynomial<F>) {
        let sum = match self.coeffs.remove(&dmono) {
            Some(old) => &old + &poly,
            None => poly,
        };
        if !sum.is_zero() {
            self.coeffs.insert(dmono, sum);
        }
    }

    /// Projective dimension `N`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero coefficients in canonical multi-index order.
    pub fn coefficients(&self) -> impl Iterator<Item = (&Monomial, &Polynomial<F>)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, dmono: &[u32]) -> Polynomial<F> {
        self.coeffs
            .get(&Monomial::new(dmono.to_vec()))
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.n + 1))
    }

    /// All `C(n + k, k)` multi-indices with `|I| = k`, canonical order.
    pub fn multi_indices(&self) -> Vec<Monomial> {
        monomials_of_degree(self.n + 1, self.k)
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero(self.n, self.k);
        for (m, p) in &self.coeffs {
            out.add_coefficient(m.clone(), p.scale(c));
        }
        out
    }

    /// `self - other`; both must have the same `n` and `k`.
    pub fn sub(&self, other: &Self) -> Result<Self, FormError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, p) in &other.coeffs {
            out.add_coefficient(m.clone(), -p);
        }
        Ok(out)
    }

    fn check_compatible(&self, other: &Self) -> Result<(), FormError> {
        if self.n != other.n || self.k != other.k {
            return Err(FormError::Shape(format!(
                "forms on P^{} with k={} and P^{} with k={} are incompatible",
                self.n, self.k, other.n, other.k
            )));
        }
        Ok(())
    }

    /// Symmetric product of two forms.
    pub fn sym_mul(&self, other: &Self) -> Result<Self, FormError> {
        if self.n != other.n {
            return Err(FormError::Shape("symmetric product of forms on different spaces".into()));
        }
        Self::from_bigraded(self.n, self.k + other.k, &(&self.to_bigraded() * &other.to_bigraded()))
    }

    /// The common coefficient degree `d + k`.
    pub fn coefficient_degree(&self) -> Result<u32, FormError> {
        let mut first: Option<u32> = None;
        for (dmono, a) in &self.coeffs {
            let deg = a.homogeneous_degree().ok_or_else(|| FormError::CoefficientNotHomogeneous {
                dmono: dmono.exponents().to_vec(),
            })?;
            match first {
                None => first = Some(deg),
                Some(f) if f != deg => {
                    return Err(FormError::CoefficientDegreeMismatch { first: f, other: deg })
                }
                _ => {}
            }
        }
        first.ok_or(FormError::ZeroForm)
    }

    /// `d = deg A_I - k`, with `deg K_F = d - 1` reported for foliations on the plane.
    pub fn web_degree(&self) -> Result<WebDegree, FormError> {
        let m = self.coefficient_degree()?;
        if m < self.k {
            return Err(FormError::DegreeBelowK { degree: m, k: self.k });
        }
        let d = m - self.k;
        Ok(WebDegree {
            n: self.n,
            k: self.k,
            d,
            kf_degree: (self.k == 1 && self.n == 2).then(|| d as i64 - 1),
        })
    }

    /// Contraction with the radial field `R = Σ x_j ∂/∂x_j`, a `(k-1)`-form.
    pub fn euler_contract(&self) -> Self {
        if self.k == 0 {
            return Self::zero(self.n, 0);
        }
        let n1 = self.n + 1;
        let p = self.to_bigraded();
        let mut out = Polynomial::zero(2 * n1);
        for j in 0..n1 {
            let xj = Polynomial::var(2 * n1, j);
            out = &out + &(&xj * &p.partial(n1 + j).expect("index in range"));
        }
        Self::from_bigraded(self.n, self.k - 1, &out).expect("contraction keeps shape")
    }

    /// Checks every web invariant, in this order: nonzero, equal-degree
    /// homogeneous coefficients of degree at least `k`, vanishing Euler
    /// contraction, and coefficients without a common factor.
    pub fn validate(&self) -> Result<(), FormError> {
        if self.k == 0 {
            return Err(FormError::Shape("k must be at least 1".into()));
        }
        if self.n == 0 {
            return Err(FormError::Shape("projective dimension must be at least 1".into()));
        }
        self.web_degree()?;
        let contraction = self.euler_contract();
        if !contraction.is_zero() {
            return Err(FormError::EulerContractionNonzero(contraction.to_string()));
        }
        let g = gcd_all(self.n + 1, self.coeffs.values());
        if !g.is_constant() {
            return Err(FormError::CommonFactor(g.to_string()));
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// True iff `self` and `other` differ by a scalar factor, decided by the
    /// vanishing of every 2×2 minor `A_I B_J - A_J B_I` as a polynomial.
    ///
    /// The zero form is proportional to everything.
    pub fn proportional_to(&self, other: &Self) -> bool {
        if self.n != other.n || self.k != other.k {
            return false;
        }
        // minors against one pivot suffice: the coefficient ring is a domain
        let Some((pivot, a0)) = self.coeffs.iter().next() else {
            return true;
        };
        let b0 = other.coefficient(pivot.exponents());
        let keys: std::collections::BTreeSet<&Monomial> =
            self.coeffs.keys().chain(other.coeffs.keys()).collect();
        keys.into_iter().all(|j| {
            let aj = self.coefficient(j.exponents());
            let bj = other.coefficient(j.exponents());
            &(a0 * &bj) - &(&aj * &b0) == Polynomial::zero(self.n + 1)
        })
    }

    /// The scalar `c` with `other = c · self`, if there is one.
    pub fn ratio_to(&self, other: &Self) -> Option<F> {
        if self.n != other.n || self.k != other.k {
            return None;
        }
        let (pivot, a0) = self.coeffs.iter().next()?;
        let b0 = other.coefficient(pivot.exponents());
        let c = match b0.leading_coefficient() {
            Some(lb) => lb.clone() / a0.leading_coefficient()?.clone(),
            None => F::zero(),
        };
        (self.scale(&c) == *other).then_some(c)
    }

    /// Coefficients specialized at a point: a form of degree `k` in the differentials.
    pub fn at_point(&self, point: &[F]) -> Result<Polynomial<F>, FormError> {
        let n1 = self.n + 1;
        let mut out = Polynomial::zero(n1);
        for (dmono, a) in &self.coeffs {
            let v = a.eval(point)?;
            out.add_term(dmono.clone(), v);
        }
        Ok(out)
    }
}

/// `x, y, z, dx, dy, dz` style names for the bigraded ring of `P^n`.
pub fn bigraded_names(n: usize) -> Vec<String> {
    let base = default_var_names(n + 1);
    let mut names = base.clone();
    names.extend(base.iter().map(|v| format!("d{v}")));
    names
}

impl<F: Field> fmt::Display for SymForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let names = default_var_names(self.n + 1);
        let dnames: Vec<String> = names.iter().map(|v| format!("d{v}")).collect();
        let dref: Vec<&str> = dnames.iter().map(String::as_str).collect();
        let xref: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut first = true;
        for (dmono, a) in &self.coeffs {
            let dm = Polynomial::<F>::monomial(dmono.clone(), F::one()).to_string_with(&dref);
            let single = a.num_terms() == 1;
            let (negative, body) = if single {
                let (m, c) = a.terms().next().unwrap();
                let abs = Polynomial::monomial(m.clone(), c.abs());
                (c.is_negative(), abs.to_string_with(&xref))
            } else {
                (false, format!("({})", a.to_string_with(&xref)))
            };
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            if dmono.is_one() {
                f.write_str(&body)?;
            } else if body == "1" {
                f.write_str(&dm)?;
            } else {
                write!(f, "{body}*{dm}")?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for SymForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymForm[N={}, k={}]({})", self.n, self.k, self)
    }
}

#[cfg(test)]
mod tests {
    use crate::{rat, Form};

    fn sample_foliation() -> Form {
        Form::parse(2, "-y*z^2*dx + (x*z^2 + z*y^2)*dy - y^3*dz").unwrap()
    }

    #[test]
    fn example_foliation_is_a_degree_two_web() {
        let w = sample_foliation();
        w.validate().unwrap();
        let deg = w.web_degree().unwrap();
        assert_eq!((deg.d, deg.k, deg.kf_degree), (2, 1, Some(1)));
    }

    #[test]
    fn example_coefficient_of_dx_at_ones() {
        let w = sample_foliation();
        let a = w.coefficient(&[1, 0, 0]);
        assert_eq!(a.eval(&[rat(1), rat(1), rat(1)]).unwrap(), rat(-1));
    }

    #[test]
    fn radial_foliation_has_degree_zero() {
        let w = Form::parse(2, "x*dy - y*dx").unwrap();
        w.validate().unwrap();
        let deg = w.web_degree().unwrap();
        assert_eq!((deg.d, deg.kf_degree), (0, Some(-1)));
    }

    #[test]
    fn two_web_degree_from_coefficient_degree() {
        let a = Form::parse(2, "x*z*dy + x*y*dz - 2*y*z*dx").unwrap();
        let b = Form::parse(2, "(y^2*z - z^2*y)*dx + (z^2*x - x^2*z)*dy + (x^2*y - y^2*x)*dz").unwrap();
        let w = a.sym_mul(&b).unwrap();
        assert_eq!(w.k(), 2);
        assert_eq!(w.coefficient_degree().unwrap(), 5);
        assert_eq!(w.web_degree().unwrap().d, 3);
    }

    #[test]
    fn euler_contraction_examples() {
        assert!(sample_foliation().euler_contract().is_zero());
        assert!(Form::parse(2, "x*dy - y*dx").unwrap().euler_contract().is_zero());
        let bad = Form::parse(2, "x*dx").unwrap();
        assert_eq!(bad.euler_contract().to_string(), "x^2");
        assert_eq!(bad.validate().unwrap_err().name(), "euler_contraction_nonzero");
    }

    #[test]
    fn validation_names_each_violation() {
        let mismatch = Form::parse(2, "x^2*dx + y*dy").unwrap();
        assert_eq!(mismatch.validate().unwrap_err().name(), "coefficient_degree_mismatch");
        let inhom = Form::parse(2, "(x^2 + y)*dx").unwrap();
        assert_eq!(inhom.validate().unwrap_err().name(), "coefficient_not_homogeneous");
        let common = Form::parse(2, "x*z*dy - y*z*dx").unwrap();
        assert_eq!(common.validate().unwrap_err().name(), "common_factor");
        assert_eq!(Form::zero(2, 1).validate().unwrap_err().name(), "zero_form");
    }

    #[test]
    fn raw_shape_checks() {
        let p = crate::Poly::one(3);
        assert!(Form::raw(2, 1, [(vec![1, 0], p.clone())]).is_err());
        assert!(Form::raw(2, 1, [(vec![1, 1, 0], p.clone())]).is_err());
        assert!(Form::raw(2, 1, [(vec![1, 0, 0], crate::Poly::one(2))]).is_err());
        let cancel = Form::raw(2, 1, [(vec![1, 0, 0], p.clone()), (vec![1, 0, 0], -&p)]).unwrap();
        assert!(cancel.is_zero());
    }

    #[test]
    fn display_round_trips_through_parse() {
        for s in ["x*dy - y*dx", "-y*z^2*dx + (x*z^2 + y^2*z)*dy - y^3*dz", "dx^2", "3/2*x*dx*dy"] {
            let w = Form::parse(2, s).unwrap();
            assert_eq!(Form::parse(2, &w.to_string()).unwrap(), w);
        }
    }

    #[test]
    fn proportionality() {
        let w = sample_foliation();
        assert!(w.proportional_to(&w.scale(&rat(-3))));
        assert_eq!(w.ratio_to(&w.scale(&rat(-3))), Some(rat(-3)));
        let radial = Form::parse(2, "x*dy - y*dx").unwrap();
        assert!(!radial.proportional_to(&Form::parse(2, "x*dy + y*dx").unwrap()));
        assert_eq!(radial.ratio_to(&Form::parse(2, "x*dy + y*dx").unwrap()), None);
    }
}
