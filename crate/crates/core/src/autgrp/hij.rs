use std::fmt::Write as _;

use super::{AutError, ProjMap};
use crate::exactalg::{default_var_names, Monomial, Polynomial};
use crate::scalar::Field;
use crate::symforms::{format_point, FormError, SymForm};

/// Polynomial equations in the matrix entries `a_ij` satisfied by every
/// automorphism of a web.
///
/// For a sample point `x`, `B_I^x(a)` is the coefficient of `dx^I` in `T*ω`
/// evaluated at `x`, of degree `d + 2k` in the `a_ij`. The generators are
/// `H_IJ^x = A_I(x) B_J^x - A_J(x) B_I^x` for every pair `I < J` of
/// multi-indices, zeros included, so each point contributes `C(n_I, 2)`.
#[derive(Clone, PartialEq, Eq)]
pub struct BezoutSystem<F> {
    pub(super) var_names: Vec<String>,
    pub(super) generators: Vec<Polynomial<F>>,
    pub(super) sample_points: Vec<Vec<F>>,
    pub(super) degree: u32,
}

impl<F: Field> std::fmt::Debug for BezoutSystem<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BezoutSystem")
            .field("var_names", &self.var_names)
            .field("generators", &self.generators)
            .field("degree", &self.degree)
            .finish()
    }
}

/// `a00, a01, ...` (`a0_10` style once an index needs two digits).
pub fn matrix_var_names(dim: usize) -> Vec<String> {
    let mut names = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            names.push(if dim <= 10 { format!("a{i}{j}") } else { format!("a{i}_{j}") });
        }
    }
    names
}

impl<F: Field> BezoutSystem<F> {
    pub fn new(
        var_names: Vec<String>,
        generators: Vec<Polynomial<F>>,
        sample_points: Vec<Vec<F>>,
        degree: u32,
    ) -> Result<Self, AutError> {
        let nvars = var_names.len();
        if let Some(g) = generators.iter().find(|g| g.nvars() != nvars) {
            return Err(AutError::System(format!(
                "generator in {} variables, system has {nvars}",
                g.nvars()
            )));
        }
        Ok(BezoutSystem { var_names, generators, sample_points, degree })
    }

    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn sample_points(&self) -> &[Vec<F>] {
        &self.sample_points
    }

    /// `d + 2k`, the degree of every generator in the `a_ij`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// True iff every generator vanishes at the entries of `t`.
    ///
    /// Only for systems specialized at sample points, whose variables are
    /// exactly the matrix entries.
    pub fn vanishes_at(&self, t: &ProjMap<F>) -> Result<bool, AutError> {
        if t.dim() * t.dim() != self.nvars() {
            return Err(AutError::SizeMismatch { expected: self.nvars(), found: t.dim() * t.dim() });
        }
        for g in &self.generators {
            if !g.eval(t.entries()).map_err(FormError::from)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Ideal generators in a Singular-style listing over `Q[vars]`.
    pub fn to_ideal_text(&self) -> String {
        let names: Vec<&str> = self.var_names.iter().map(String::as_str).collect();
        let mut out = String::new();
        let _ = writeln!(out, "ring R = 0,({}),dp;", names.join(","));
        if self.generators.is_empty() {
            out.push_str("ideal I = 0;\n");
            return out;
        }
        out.push_str("ideal I =\n");
        let last = self.generators.len() - 1;
        for (i, g) in self.generators.iter().enumerate() {
            let _ = writeln!(out, "  {}{}", g.to_string_with(&names), if i == last { ";" } else { "," });
        }
        out
    }
}

/// Images of `x_i` and `dx_i` under `T = (a_ij)` in a ring whose first
/// `(N+1)²` variables are the `a_ij` and whose last `N+1` are the differentials.
/// `x` gives the point coordinates as polynomials in that same ring.
fn symbolic_images<F: Field>(n1: usize, nv: usize, x: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
    let dx0 = nv - n1;
    let mut images = Vec::with_capacity(2 * n1);
    for i in 0..n1 {
        let mut p = Polynomial::zero(nv);
        for (j, xj) in x.iter().enumerate() {
            p = &p + &(&Polynomial::var(nv, i * n1 + j) * xj);
        }
        images.push(p);
    }
    for i in 0..n1 {
        let mut p = Polynomial::zero(nv);
        for j in 0..n1 {
            p = &p + &(&Polynomial::var(nv, i * n1 + j) * &Polynomial::var(nv, dx0 + j));
        }
        images.push(p);
    }
    images
}

/// Pairwise minors `A_I B_J - A_J B_I` over all multi-indices `I < J`.
fn minors<F: Field>(
    indices: &[Monomial],
    a: &[Polynomial<F>],
    b: &std::collections::BTreeMap<Monomial, Polynomial<F>>,
    nv: usize,
    out: &mut Vec<Polynomial<F>>,
) {
    let zero = Polynomial::zero(nv);
    for i in 0..indices.len() {
        for j in i + 1..indices.len() {
            let bi = b.get(&indices[i]).unwrap_or(&zero);
            let bj = b.get(&indices[j]).unwrap_or(&zero);
            out.push(&(&a[i] * bj) - &(&a[j] * bi));
        }
    }
}

/// The system specialized at each sample point, in the `(N+1)²` matrix variables.
pub fn hij_system<F: Field>(form: &SymForm<F>, points: &[Vec<F>]) -> Result<BezoutSystem<F>, AutError> {
    form.validate()?;
    let wd = form.web_degree()?;
    let n1 = form.n() + 1;
    let na = n1 * n1;
    let nv = na + n1;
    let indices = form.multi_indices();
    let bigraded = form.to_bigraded();
    let mut generators = Vec::new();
    for x in points {
        if x.len() != n1 {
            return Err(FormError::Shape(format!("sample point has {} coordinates, expected {n1}", x.len())).into());
        }
        let values: Vec<F> = indices
            .iter()
            .map(|i| form.coefficient(i.exponents()).eval(x))
            .collect::<Result<_, _>>()
            .map_err(FormError::from)?;
        if values.iter().all(|v| v.is_zero()) {
            return Err(FormError::SingularPoint(format_point(x)).into());
        }
        let xs: Vec<Polynomial<F>> = x.iter().map(|c| Polynomial::constant(nv, c.clone())).collect();
        let pulled = bigraded.substitute(&symbolic_images(n1, nv, &xs)).map_err(FormError::from)?;
        let b = pulled.split_tail(na);
        let a: Vec<Polynomial<F>> = values.into_iter().map(|v| Polynomial::constant(na, v)).collect();
        minors(&indices, &a, &b, na, &mut generators);
    }
    BezoutSystem::new(matrix_var_names(n1), generators, points.to_vec(), wd.d + 2 * wd.k)
}

/// The system with `x` left symbolic: variables `a_ij` followed by the
/// point coordinates.
pub fn hij_symbolic<F: Field>(form: &SymForm<F>) -> Result<BezoutSystem<F>, AutError> {
    form.validate()?;
    let wd = form.web_degree()?;
    let n1 = form.n() + 1;
    let na = n1 * n1;
    let head = na + n1;
    let nv = head + n1;
    let indices = form.multi_indices();
    let xs: Vec<Polynomial<F>> = (0..n1).map(|j| Polynomial::var(nv, na + j)).collect();
    let pulled = form.to_bigraded().substitute(&symbolic_images(n1, nv, &xs)).map_err(FormError::from)?;
    let b = pulled.split_tail(head);
    let embed: Vec<usize> = (na..head).collect();
    let a: Vec<Polynomial<F>> =
        indices.iter().map(|i| form.coefficient(i.exponents()).remap(head, &embed)).collect();
    let mut generators = Vec::new();
    minors(&indices, &a, &b, head, &mut generators);
    let mut names = matrix_var_names(n1);
    names.extend(default_var_names(n1));
    BezoutSystem::new(names, generators, Vec::new(), wd.d + 2 * wd.k)
}
