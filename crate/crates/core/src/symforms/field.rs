use std::fmt;

use super::FormError;
use crate::exactalg::{default_var_names, parse_polynomial, Polynomial};
use crate::scalar::Field;

/// Homogeneous polynomial vector field `Σ v_j ∂/∂x_j` on `C^{n+1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorField<F> {
    components: Vec<Polynomial<F>>,
}

impl<F: Field> VectorField<F> {
    /// Components must share one variable count equal to their number.
    pub fn new(components: Vec<Polynomial<F>>) -> Result<Self, FormError> {
        let n1 = components.len();
        if let Some(p) = components.iter().find(|p| p.nvars() != n1) {
            return Err(FormError::FieldLength { expected: n1, found: p.nvars() });
        }
        Ok(VectorField { components })
    }

    /// The radial field `R = Σ x_j ∂/∂x_j`.
    pub fn euler(nvars: usize) -> Self {
        VectorField { components: (0..nvars).map(|j| Polynomial::var(nvars, j)).collect() }
    }

    /// Linear field `x ↦ M x`, i.e. `v_i = Σ_j m_ij x_j`.
    pub fn linear(matrix: &[Vec<F>]) -> Result<Self, FormError> {
        let n1 = matrix.len();
        let comps = matrix
            .iter()
            .map(|row| {
                if row.len() != n1 {
                    return Err(FormError::FieldLength { expected: n1, found: row.len() });
                }
                let mut p = Polynomial::zero(n1);
                for (j, c) in row.iter().enumerate() {
                    p = &p + &Polynomial::var(n1, j).scale(c);
                }
                Ok(p)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(VectorField { components: comps })
    }

    /// Parses `"p0 d/dx + p1 d/dy + ..."`; coefficients are polynomial
    /// expressions (parenthesize sums), missing directions are zero.
    pub fn parse(nvars: usize, text: &str) -> Result<Self, FormError> {
        let names = default_var_names(nvars);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut comps = vec![Polynomial::zero(nvars); nvars];
        let mut rest = text;
        let mut seen_any = false;
        while let Some(pos) = rest.find("d/d") {
            let coeff_text = rest[..pos].trim();
            let after = &rest[pos + 3..];
            let name_len = after
                .char_indices()
                .find(|(_, c)| !(c.is_ascii_alphanumeric() || *c == '_'))
                .map(|(i, _)| i)
                .unwrap_or(after.len());
            let var = &after[..name_len];
            let index = names.iter().position(|n| n == var).ok_or_else(|| {
                FormError::Shape(format!("unknown direction d/d{var} in vector field"))
            })?;
            let coeff_text = coeff_text.strip_prefix('+').unwrap_or(coeff_text).trim();
            let coeff_text = coeff_text.strip_suffix('*').unwrap_or(coeff_text).trim();
            let coeff = match coeff_text {
                "" => Polynomial::one(nvars),
                "-" => -Polynomial::one(nvars),
                s => parse_polynomial(s, &refs)?,
            };
            comps[index] = &comps[index] + &coeff;
            rest = &after[name_len..];
            seen_any = true;
        }
        if !rest.trim().is_empty() || !seen_any {
            return Err(FormError::Shape(format!(
                "vector field must be a sum of 'p d/dv' terms, got '{text}'"
            )));
        }
        Ok(VectorField { components: comps })
    }

    pub fn components(&self) -> &[Polynomial<F>] {
        &self.components
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    /// Common degree of the nonzero components; `Ok(None)` for the zero field.
    pub fn degree(&self) -> Result<Option<u32>, FormError> {
        let mut deg = None;
        for c in self.components.iter().filter(|c| !c.is_zero()) {
            let d = c.homogeneous_degree().ok_or(FormError::InhomogeneousField)?;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(FormError::InhomogeneousField),
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn is_linear(&self) -> bool {
        matches!(self.degree(), Ok(Some(1)) | Ok(None))
    }
}

impl<F: Field> fmt::Display for VectorField<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_var_names(self.nvars());
        let parts: Vec<String> = self
            .components
            .iter()
            .zip(&names)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, n)| if c.num_terms() == 1 { format!("{c} d/d{n}") } else { format!("({c}) d/d{n}") })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl<F: Field> fmt::Debug for VectorField<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorField({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn parses_shorthand() {
        let v = VectorField::<Rational>::parse(3, "y d/dx").unwrap();
        assert_eq!(v.components()[0].to_string(), "y");
        assert!(v.components()[1].is_zero());
        let w = VectorField::<Rational>::parse(3, "x d/dx + (y - z)*d/dy - d/dz").unwrap();
        assert_eq!(w.components()[1].to_string(), "-z + y");
        assert_eq!(w.degree().unwrap_err(), FormError::InhomogeneousField);
        assert!(VectorField::<Rational>::parse(3, "y").is_err());
        assert!(VectorField::<Rational>::parse(3, "y d/dq").is_err());
    }

    #[test]
    fn degrees() {
        assert!(VectorField::<Rational>::euler(3).is_linear());
        assert!(!VectorField::<Rational>::parse(3, "x^2 d/dy").unwrap().is_linear());
        assert_eq!(VectorField::<Rational>::parse(3, "x^2 d/dy").unwrap().degree().unwrap(), Some(2));
    }
}
