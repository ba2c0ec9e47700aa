use super::{FormError, SymForm, VectorField};
use crate::exactalg::{gcd_all, Monomial, Polynomial};
use crate::scalar::{from_usize, Field};

/// Coordinates used by the deterministic sample-point schedule.
pub const SAMPLE_COORDINATES: [i64; 5] = [1, 2, 3, 5, 7];

/// Binary form `Σ b_j s^{d-j} t^j` on a line, the tangency divisor of a web.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm<F> {
    pub degree: u32,
    /// `coefficients[j]` multiplies `s^{degree-j} t^j`.
    pub coefficients: Vec<F>,
}

impl<F: Field> BinaryForm<F> {
    fn from_polynomial(p: &Polynomial<F>, degree: u32) -> Self {
        let coefficients = (0..=degree)
            .map(|j| p.coefficient(&Monomial::new(vec![degree - j, j])))
            .collect();
        BinaryForm { degree, coefficients }
    }

    pub fn to_polynomial(&self) -> Polynomial<F> {
        let mut p = Polynomial::zero(2);
        for (j, c) in self.coefficients.iter().enumerate() {
            p.add_term(Monomial::new(vec![self.degree - j as u32, j as u32]), c.clone());
        }
        p
    }

    /// Vanishes at `(s:t) = (0:1)`, the second point spanning the line.
    pub fn vanishes_at_second_point(&self) -> bool {
        self.coefficients.last().is_some_and(|c| c.is_zero())
    }

    /// Vanishes at `(s:t) = (1:0)`, the first point spanning the line.
    pub fn vanishes_at_first_point(&self) -> bool {
        self.coefficients.first().is_some_and(|c| c.is_zero())
    }
}

impl<F: Field> SymForm<F> {
    /// Whether the 3-form `ω ∧ dω` vanishes identically (foliations only).
    pub fn is_integrable(&self) -> Result<bool, FormError> {
        if self.k != 1 {
            return Err(FormError::RequiresFoliation(self.k));
        }
        let n1 = self.n + 1;
        let a: Vec<Polynomial<F>> = (0..n1)
            .map(|i| {
                let mut e = vec![0; n1];
                e[i] = 1;
                self.coefficient(&e)
            })
            .collect();
        let d = |i: usize, p: &Polynomial<F>| p.partial(i).expect("index in range");
        // (dω)_{ij} = ∂_i A_j - ∂_j A_i
        let dw = |i: usize, j: usize| &d(i, &a[j]) - &d(j, &a[i]);
        for p in 0..n1 {
            for q in p + 1..n1 {
                for r in q + 1..n1 {
                    let c = &(&(&a[p] * &dw(q, r)) - &(&a[q] * &dw(p, r))) + &(&a[r] * &dw(p, q));
                    if !c.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Lie derivative `L_v ω` of the form along a homogeneous vector field.
    ///
    /// On the bigraded polynomial `P(x, dx)` this is the prolonged derivation
    /// `Σ v_j ∂P/∂x_j + Σ_j (Σ_l ∂_l v_j dx_l) ∂P/∂(dx_j)`.
    pub fn lie_derivative(&self, v: &VectorField<F>) -> Result<SymForm<F>, FormError> {
        let n1 = self.n + 1;
        if v.nvars() != n1 {
            return Err(FormError::FieldLength { expected: n1, found: v.nvars() });
        }
        v.degree()?;
        let nv = 2 * n1;
        let p = self.to_bigraded();
        let embed: Vec<usize> = (0..n1).collect();
        let mut out = Polynomial::zero(nv);
        for (j, vj) in v.components().iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            let vj_big = vj.remap(nv, &embed);
            out = &out + &(&vj_big * &p.partial(j)?);
            // d(v_j) = Σ_l ∂_l v_j dx_l
            let mut dvj = Polynomial::zero(nv);
            for l in 0..n1 {
                let dl = vj.partial(l)?.remap(nv, &embed);
                dvj = &dvj + &(&dl * &Polynomial::var(nv, n1 + l));
            }
            out = &out + &(&dvj * &p.partial(n1 + j)?);
        }
        SymForm::from_bigraded(self.n, self.k, &out)
    }

    /// For a linear field, `Some(c)` when `L_v ω = c·ω`, i.e. the flow of `v`
    /// preserves the web; `None` otherwise.
    pub fn flow_preserves(&self, v: &VectorField<F>) -> Result<Option<F>, FormError> {
        match v.degree()? {
            Some(1) | None => {}
            other => return Err(FormError::NonlinearField(other)),
        }
        let lie = self.lie_derivative(v)?;
        if !self.proportional_to(&lie) {
            return Ok(None);
        }
        Ok(self.ratio_to(&lie))
    }

    /// Pulls the form back to the line `x = s·p + t·q` and divides out
    /// `(s dt - t ds)^k`, returning the quotient `B(s, t)` of degree `d`.
    pub fn restrict_to_line(&self, p: &[F], q: &[F]) -> Result<BinaryForm<F>, FormError> {
        let n1 = self.n + 1;
        for pt in [p, q] {
            if pt.len() != n1 {
                return Err(crate::exactalg::AlgError::PointLength { expected: n1, found: pt.len() }.into());
            }
        }
        let independent = (0..n1)
            .any(|i| (i + 1..n1).any(|j| p[i].clone() * q[j].clone() != p[j].clone() * q[i].clone()));
        if !independent {
            return Err(FormError::DegenerateLine);
        }
        let deg = self.web_degree()?.d;
        // variables: s, t, ds, dt
        let var = |i| Polynomial::<F>::var(4, i);
        let (s, t, ds, dt) = (var(0), var(1), var(2), var(3));
        let mut images = Vec::with_capacity(2 * n1);
        for i in 0..n1 {
            images.push(&s.scale(&p[i]) + &t.scale(&q[i]));
        }
        for i in 0..n1 {
            images.push(&ds.scale(&p[i]) + &dt.scale(&q[i]));
        }
        let pulled = self.to_bigraded().substitute(&images)?;
        if pulled.is_zero() {
            return Err(FormError::NonGenericLine("the line is invariant (restriction vanishes)".into()));
        }
        let parts = pulled.split_tail(2);
        let top = parts
            .get(&Monomial::new(vec![0, self.k]))
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(2));
        let quotient = top
            .div_var_power(0, self.k)
            .ok_or_else(|| FormError::NonGenericLine("restriction not divisible by (s dt - t ds)^k".into()))?;
        let quotient4 = quotient.remap(4, &[0, 1]);
        let contact = &(&s * &dt) - &(&t * &ds);
        if &quotient4 * &contact.pow(self.k) != pulled {
            return Err(FormError::NonGenericLine("restriction not divisible by (s dt - t ds)^k".into()));
        }
        if quotient.is_zero() || quotient.homogeneous_degree() != Some(deg) {
            return Err(FormError::NonGenericLine(format!(
                "tangency divisor has degree {:?}, expected {deg}",
                quotient.homogeneous_degree()
            )));
        }
        Ok(BinaryForm::from_polynomial(&quotient, deg))
    }

    /// Whether the form at `x`, a degree-k polynomial in the differentials,
    /// has no repeated factor: `gcd(P, ∂P/∂dx_0, ..., ∂P/∂dx_n)` is constant.
    pub fn squarefree_at(&self, x: &[F]) -> Result<bool, FormError> {
        let at_x = self.at_point(x)?;
        if at_x.is_zero() {
            return Err(FormError::SingularPoint(format_point(x)));
        }
        if self.k <= 1 {
            return Ok(true);
        }
        let mut family = vec![at_x.clone()];
        for i in 0..self.n + 1 {
            family.push(at_x.partial(i)?);
        }
        Ok(gcd_all(self.n + 1, family.iter()).is_constant())
    }

    /// The factor `d + 2k` by which the radial field scales a web.
    pub fn radial_weight(&self) -> Result<F, FormError> {
        let deg = self.web_degree()?;
        Ok(from_usize(deg.d as usize + 2 * self.k as usize))
    }
}

pub(crate) fn format_point<F: Field>(x: &[F]) -> String {
    let parts: Vec<String> = x.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(":"))
}

/// First `count` points with coordinates from [`SAMPLE_COORDINATES`] at
/// which the form does not vanish, in lexicographic order.
///
/// Points with pairwise distinct coordinates come first when there are
/// enough coordinates for that; the remaining tuples follow.
pub fn default_sample_points<F: Field>(form: &SymForm<F>, count: usize) -> Vec<Vec<F>> {
    let n1 = form.n() + 1;
    let mut distinct = Vec::new();
    let mut others = Vec::new();
    let mut idx = vec![0usize; n1];
    loop {
        let point: Vec<F> = idx.iter().map(|&i| F::from_i64(SAMPLE_COORDINATES[i])).collect();
        let mut sorted = idx.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() == n1 {
            distinct.push(point);
        } else {
            others.push(point);
        }
        // odometer, last coordinate fastest
        let mut pos = n1;
        loop {
            if pos == 0 {
                let mut out = Vec::new();
                for p in distinct.into_iter().chain(others) {
                    if out.len() == count {
                        break;
                    }
                    if form.at_point(&p).map(|v| !v.is_zero()).unwrap_or(false) {
                        out.push(p);
                    }
                }
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < SAMPLE_COORDINATES.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, Form, Rational};

    fn sample_foliation() -> Form {
        Form::parse(2, "-y*z^2*dx + (x*z^2 + z*y^2)*dy - y^3*dz").unwrap()
    }

    fn pt(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn plane_foliations_are_integrable() {
        assert!(sample_foliation().is_integrable().unwrap());
        assert!(Form::parse(2, "x*dy - y*dx").unwrap().is_integrable().unwrap());
    }

    #[test]
    fn contact_form_is_not_integrable() {
        let contact = Form::parse(3, "x*dy - y*dx + z*dw - w*dz").unwrap();
        contact.validate().unwrap();
        assert!(!contact.is_integrable().unwrap());
        let pencil = Form::parse(3, "x*dz - z*dx").unwrap();
        assert!(pencil.is_integrable().unwrap());
    }

    #[test]
    fn integrability_requires_k1() {
        let w = Form::parse(2, "(x*dy - y*dx)^2").unwrap();
        assert_eq!(w.is_integrable().unwrap_err(), FormError::RequiresFoliation(2));
    }

    #[test]
    fn lie_derivative_along_example_flow_vanishes() {
        let v = VectorField::parse(3, "y d/dx").unwrap();
        assert!(sample_foliation().lie_derivative(&v).unwrap().is_zero());
        assert_eq!(sample_foliation().flow_preserves(&v).unwrap(), Some(rat(0)));
    }

    #[test]
    fn radial_field_scales_by_weight() {
        let w = sample_foliation();
        let lie = w.lie_derivative(&VectorField::euler(3)).unwrap();
        assert_eq!(lie, w.scale(&rat(4)));
        assert_eq!(w.flow_preserves(&VectorField::euler(3)).unwrap(), Some(rat(4)));
        assert_eq!(w.radial_weight().unwrap(), rat(4));
    }

    #[test]
    fn rotation_like_field_on_radial_form() {
        let w = Form::parse(2, "x*dy - y*dx").unwrap();
        let v = VectorField::parse(3, "x d/dy").unwrap();
        assert!(w.lie_derivative(&v).unwrap().is_zero());
    }

    #[test]
    fn diagonal_field_does_not_preserve_example() {
        let v = VectorField::parse(3, "x d/dx").unwrap();
        assert_eq!(sample_foliation().flow_preserves(&v).unwrap(), None);
    }

    #[test]
    fn nonlinear_fields_refused() {
        let v = VectorField::parse(3, "x^2 d/dy").unwrap();
        assert!(matches!(sample_foliation().flow_preserves(&v), Err(FormError::NonlinearField(Some(2)))));
        let bad = VectorField::parse(3, "(x^2 + y) d/dy").unwrap();
        assert_eq!(sample_foliation().lie_derivative(&bad).unwrap_err(), FormError::InhomogeneousField);
    }

    #[test]
    fn radial_restricted_to_line_at_infinity() {
        let w = Form::parse(2, "x*dy - y*dx").unwrap();
        let b = w.restrict_to_line(&pt(&[1, 0, 0]), &pt(&[0, 1, 0])).unwrap();
        assert_eq!(b, BinaryForm { degree: 0, coefficients: vec![rat(1)] });
    }

    #[test]
    fn radial_lines_through_center_are_not_generic() {
        let w = Form::parse(2, "x*dy - y*dx").unwrap();
        for (p, q) in [([0, 0, 1], [1, 0, 0]), ([0, 0, 1], [2, 3, 5]), ([1, 1, 1], [1, 1, 2])] {
            let err = w.restrict_to_line(&pt(&p), &pt(&q)).unwrap_err();
            assert_eq!(err.name(), "non_generic_line", "{p:?} {q:?}");
        }
    }

    #[test]
    fn example_restriction_has_degree_two() {
        let b = sample_foliation().restrict_to_line(&pt(&[1, 0, 1]), &pt(&[0, 1, 1])).unwrap();
        assert_eq!(b.degree, 2);
        // by hand with x = s, y = t, z = s + t the form is (s dt - t ds)((s+t)^2 + t^2)
        assert_eq!(b.coefficients, vec![rat(1), rat(2), rat(2)]);
    }

    #[test]
    fn degenerate_line_rejected() {
        let w = Form::parse(2, "x*dy - y*dx").unwrap();
        assert_eq!(w.restrict_to_line(&pt(&[1, 2, 3]), &pt(&[2, 4, 6])).unwrap_err(), FormError::DegenerateLine);
    }

    #[test]
    fn squarefree_examples() {
        let w = sample_foliation();
        assert!(w.squarefree_at(&pt(&[1, 2, 3])).unwrap());
        // not a valid web (x dy + y dx does not descend), but the pointwise test applies
        let raw = Form::parse(2, "(x*dy - y*dx)*(x*dy + y*dx)").unwrap();
        assert!(raw.squarefree_at(&pt(&[1, 1, 1])).unwrap());
        let two_web = Form::parse(2, "(x*dy - y*dx)*(x*dz - z*dx)").unwrap();
        two_web.validate().unwrap();
        assert!(two_web.squarefree_at(&pt(&[1, 1, 1])).unwrap());
        let doubled = Form::parse(2, "dx^2").unwrap();
        assert!(!doubled.squarefree_at(&pt(&[1, 2, 3])).unwrap());
        // x·y in the differentials is square-free even though gcd with one partial is not constant
        let product = Form::parse(2, "dx*dy").unwrap();
        assert!(product.squarefree_at(&pt(&[1, 1, 1])).unwrap());
    }

    #[test]
    fn squarefree_rejects_singular_points() {
        let w = Form::parse(2, "x*dy - y*dx").unwrap();
        assert_eq!(w.squarefree_at(&pt(&[0, 0, 1])).unwrap_err().name(), "singular_point");
    }

    #[test]
    fn sample_schedule_is_deterministic_and_avoids_singularities() {
        let w = Form::parse(2, "x*dy - y*dx").unwrap();
        let pts = default_sample_points(&w, 3);
        assert_eq!(pts, vec![pt(&[1, 2, 3]), pt(&[1, 2, 5]), pt(&[1, 2, 7])]);
        let big = default_sample_points(&Form::parse(5, "x0*dx1 - x1*dx0").unwrap(), 2);
        assert_eq!(big.len(), 2);
    }
}
