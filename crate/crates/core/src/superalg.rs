//! Lie superalgebras, modules over them, and even linear maps.
//!
//! Bases are homogeneous. Structure constants are stored for every ordered
//! pair of basis elements: `[b_i, b_j] = sum_k c[i][j][k] b_k`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extension::AbelianExtension;
use crate::linalg::{axpy, Matrix};
use crate::scalar::{sign, Scalar};

/// Ordered homogeneous basis: names with parities 0 (even) or 1 (odd).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SuperBasis {
    names: Vec<String>,
    parities: Vec<u8>,
}

impl SuperBasis {
    pub fn new<S: Into<String>>(elements: impl IntoIterator<Item = (S, u8)>) -> Result<Self> {
        let mut names = Vec::new();
        let mut parities = Vec::new();
        for (name, parity) in elements {
            let name = name.into();
            if parity > 1 {
                return Err(Error::Basis(format!("{name} has parity {parity}")));
            }
            if names.contains(&name) {
                return Err(Error::Basis(format!("duplicate name {name}")));
            }
            names.push(name);
            parities.push(parity);
        }
        Ok(Self { names, parities })
    }

    /// All-even basis.
    pub fn even<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        Self::new(names.into_iter().map(|n| (n, 0)))
    }

    pub fn empty() -> Self {
        Self {
            names: Vec::new(),
            parities: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.parities[i]
    }

    pub fn parities(&self) -> &[u8] {
        &self.parities
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn subset(&self, indices: &[usize]) -> Self {
        Self {
            names: indices.iter().map(|&i| self.names[i].clone()).collect(),
            parities: indices.iter().map(|&i| self.parities[i]).collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        Self::new(
            self.names
                .iter()
                .cloned()
                .zip(self.parities.iter().copied())
                .chain(
                    other
                        .names
                        .iter()
                        .cloned()
                        .zip(other.parities.iter().copied()),
                ),
        )
    }

    pub fn is_all_even(&self) -> bool {
        self.parities.iter().all(|&p| p == 0)
    }

    /// Parity of a coordinate vector, `None` if it mixes parities. Zero is even.
    pub fn vector_parity<T: Scalar>(&self, v: &[T]) -> Option<u8> {
        let mut seen = None;
        for (x, &p) in v.iter().zip(&self.parities) {
            if x.is_zero() {
                continue;
            }
            match seen {
                None => seen = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(seen.unwrap_or(0))
    }
}

/// First violated axiom found by validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "kebab-case")]
pub enum Violation {
    /// `[left, right]` has a component along `target` of the wrong parity.
    Parity {
        left: String,
        right: String,
        target: String,
    },
    Antisymmetry {
        left: String,
        right: String,
    },
    Jacobi {
        x: String,
        y: String,
        z: String,
    },
    /// `g . m` has a component along `target` of the wrong parity.
    ModuleParity {
        g: String,
        m: String,
        target: String,
    },
    ModuleAxiom {
        x: String,
        y: String,
        v: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Parity {
                left,
                right,
                target,
            } => {
                write!(f, "parity: [{left}, {right}] has a {target} component")
            }
            Self::Antisymmetry { left, right } => {
                write!(f, "super-antisymmetry fails at ({left}, {right})")
            }
            Self::Jacobi { x, y, z } => write!(f, "super-Jacobi fails at ({x}, {y}, {z})"),
            Self::ModuleParity { g, m, target } => {
                write!(f, "parity: {g}.{m} has a {target} component")
            }
            Self::ModuleAxiom { x, y, v } => write!(f, "module axiom fails at ({x}, {y}, {v})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LieSuperalgebra<T> {
    name: String,
    basis: SuperBasis,
    structure: Vec<T>,
}

impl<T: Scalar> LieSuperalgebra<T> {
    /// Raw structure constants `c[(i*n + j)*n + k]`; only the shape is checked.
    pub fn from_structure(
        name: impl Into<String>,
        basis: SuperBasis,
        structure: Vec<T>,
    ) -> Result<Self> {
        let n = basis.len();
        if structure.len() != n * n * n {
            return Err(Error::Shape(format!(
                "expected {} structure constants, found {}",
                n * n * n,
                structure.len()
            )));
        }
        Ok(Self {
            name: name.into(),
            basis,
            structure,
        })
    }

    /// Build from listed brackets `[b_i, b_j] = value`.
    ///
    /// A pair listed in one orientation only gets its reverse synthesized by
    /// super-antisymmetry; when both orientations are listed both are kept
    /// verbatim, so inconsistencies surface in [`validate_superalgebra`].
    pub fn from_brackets(
        name: impl Into<String>,
        basis: SuperBasis,
        brackets: &[(usize, usize, Vec<T>)],
    ) -> Result<Self> {
        let n = basis.len();
        let mut alg = Self::abelian(name, basis);
        let mut listed = vec![false; n * n];
        for (i, j, value) in brackets {
            let (i, j) = (*i, *j);
            if i >= n || j >= n || value.len() != n {
                return Err(Error::Shape(format!("bracket ({i}, {j}) out of range")));
            }
            if listed[i * n + j] {
                return Err(Error::DuplicateBracket {
                    left: alg.basis.name(i).to_string(),
                    right: alg.basis.name(j).to_string(),
                });
            }
            listed[i * n + j] = true;
            alg.set_bracket(i, j, value);
        }
        for (i, j, value) in brackets {
            let (i, j) = (*i, *j);
            if !listed[j * n + i] {
                let s: T = -sign::<T>(alg.basis.parity(i), alg.basis.parity(j));
                let rev: Vec<T> = value.iter().map(|x| x.clone() * s.clone()).collect();
                alg.set_bracket(j, i, &rev);
            }
        }
        Ok(alg)
    }

    pub fn abelian(name: impl Into<String>, basis: SuperBasis) -> Self {
        let n = basis.len();
        Self {
            name: name.into(),
            basis,
            structure: vec![T::zero(); n * n * n],
        }
    }

    fn set_bracket(&mut self, i: usize, j: usize, value: &[T]) {
        let n = self.dim();
        self.structure[(i * n + j) * n..(i * n + j + 1) * n].clone_from_slice(value);
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn basis(&self) -> &SuperBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.basis.parity(i)
    }

    pub fn structure(&self) -> &[T] {
        &self.structure
    }

    /// `[b_i, b_j]` in coordinates.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[T] {
        let n = self.dim();
        &self.structure[(i * n + j) * n..(i * n + j + 1) * n]
    }

    pub fn bracket(&self, u: &[T], v: &[T]) -> Vec<T> {
        let n = self.dim();
        let mut out = vec![T::zero(); n];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                axpy(
                    &mut out,
                    &(ui.clone() * vj.clone()),
                    self.bracket_basis(i, j),
                );
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.structure.iter().all(T::is_zero)
    }

    pub fn unit(&self, i: usize) -> Vec<T> {
        unit(self.dim(), i)
    }

    pub fn validate(&self) -> Result<(), Violation> {
        validate_superalgebra(self)
    }

    /// Same algebra with basis element `perm[i]` moved to position `i`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.dim();
        assert_eq!(perm.len(), n, "permutation length mismatch");
        let basis = self.basis.subset(perm);
        let mut structure = vec![T::zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    structure[(i * n + j) * n + k] =
                        self.structure[(perm[i] * n + perm[j]) * n + perm[k]].clone();
                }
            }
        }
        Self {
            name: self.name.clone(),
            basis,
            structure,
        }
    }

    /// Whether the span of the indexed basis vectors is closed under bracketing with all of `self`.
    pub fn is_ideal(&self, ideal: &[usize]) -> bool {
        let n = self.dim();
        let outside: Vec<usize> = (0..n).filter(|k| !ideal.contains(k)).collect();
        ideal.iter().all(|&a| {
            (0..n).all(|j| {
                outside.iter().all(|&k| {
                    self.bracket_basis(j, a)[k].is_zero() && self.bracket_basis(a, j)[k].is_zero()
                })
            })
        })
    }
}

pub(crate) fn unit<T: Scalar>(n: usize, i: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n];
    v[i] = T::one();
    v
}

/// Check parity, super-antisymmetry and super-Jacobi, in that order.
///
/// Antisymmetry is reported at `(b_i, b_j)` with `i >= j`; Jacobi at the first
/// failing triple in lexicographic order.
pub fn validate_superalgebra<T: Scalar>(g: &LieSuperalgebra<T>) -> Result<(), Violation> {
    let n = g.dim();
    let b = g.basis();
    for i in 0..n {
        for j in 0..n {
            for (k, c) in g.bracket_basis(i, j).iter().enumerate() {
                if !c.is_zero() && b.parity(k) != (b.parity(i) + b.parity(j)) % 2 {
                    return Err(Violation::Parity {
                        left: b.name(i).into(),
                        right: b.name(j).into(),
                        target: b.name(k).into(),
                    });
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..=i {
            let s: T = -sign::<T>(b.parity(i), b.parity(j));
            let ok = g
                .bracket_basis(i, j)
                .iter()
                .zip(g.bracket_basis(j, i))
                .all(|(x, y)| *x == s.clone() * y.clone());
            if !ok {
                return Err(Violation::Antisymmetry {
                    left: b.name(i).into(),
                    right: b.name(j).into(),
                });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if !jacobi_holds(g, i, j, k) {
                    return Err(Violation::Jacobi {
                        x: b.name(i).into(),
                        y: b.name(j).into(),
                        z: b.name(k).into(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// `[[x,y],z] = [x,[y,z]] - (-1)^{|x||y|} [y,[x,z]]` on basis elements.
fn jacobi_holds<T: Scalar>(g: &LieSuperalgebra<T>, i: usize, j: usize, k: usize) -> bool {
    let (x, y, z) = (g.unit(i), g.unit(j), g.unit(k));
    let lhs = g.bracket(g.bracket_basis(i, j), &z);
    let mut rhs = g.bracket(&x, g.bracket_basis(j, k));
    let s: T = -sign::<T>(g.parity(i), g.parity(j));
    axpy(&mut rhs, &s, &g.bracket(&y, g.bracket_basis(i, k)));
    lhs == rhs
}

/// Action of a Lie superalgebra on a super vector space:
/// `b_i . v_m = sum_n a[i][m][n] v_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleAction<T> {
    algebra: LieSuperalgebra<T>,
    space: SuperBasis,
    action: Vec<T>,
}

impl<T: Scalar> ModuleAction<T> {
    pub fn new(algebra: LieSuperalgebra<T>, space: SuperBasis, action: Vec<T>) -> Result<Self> {
        let (n, m) = (algebra.dim(), space.len());
        if action.len() != n * m * m {
            return Err(Error::Shape(format!(
                "expected {} action coefficients, found {}",
                n * m * m,
                action.len()
            )));
        }
        Ok(Self {
            algebra,
            space,
            action,
        })
    }

    pub fn trivial(algebra: LieSuperalgebra<T>, space: SuperBasis) -> Self {
        let len = algebra.dim() * space.len() * space.len();
        Self {
            algebra,
            space,
            action: vec![T::zero(); len],
        }
    }

    /// Build from listed entries `b_i . v_m = value`; unlisted products are zero.
    pub fn from_entries(
        algebra: LieSuperalgebra<T>,
        space: SuperBasis,
        entries: &[(usize, usize, Vec<T>)],
    ) -> Result<Self> {
        let mut module = Self::trivial(algebra, space);
        let (n, m) = (module.algebra.dim(), module.space.len());
        for (i, mi, value) in entries {
            if *i >= n || *mi >= m || value.len() != m {
                return Err(Error::Shape(format!(
                    "action entry ({i}, {mi}) out of range"
                )));
            }
            let off = (i * m + mi) * m;
            module.action[off..off + m].clone_from_slice(value);
        }
        Ok(module)
    }

    pub fn algebra(&self) -> &LieSuperalgebra<T> {
        &self.algebra
    }

    pub fn space(&self) -> &SuperBasis {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.len()
    }

    pub fn coefficients(&self) -> &[T] {
        &self.action
    }

    /// `b_i . v_m` in coordinates.
    pub fn act_basis(&self, i: usize, m: usize) -> &[T] {
        let d = self.dim();
        &self.action[(i * d + m) * d..(i * d + m + 1) * d]
    }

    pub fn act(&self, x: &[T], v: &[T]) -> Vec<T> {
        let d = self.dim();
        let mut out = vec![T::zero(); d];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (m, vm) in v.iter().enumerate() {
                if !vm.is_zero() {
                    axpy(&mut out, &(xi.clone() * vm.clone()), self.act_basis(i, m));
                }
            }
        }
        out
    }

    /// Matrix of `v -> b_i . v`.
    pub fn action_matrix(&self, i: usize) -> Matrix<T> {
        let d = self.dim();
        Matrix::from_fn(d, d, |r, c| self.act_basis(i, c)[r].clone())
    }

    pub fn is_trivial(&self) -> bool {
        self.action.iter().all(T::is_zero)
    }

    pub fn validate(&self) -> Result<(), Violation> {
        validate_module(self)
    }

    /// The same action with the algebra basis permuted as in [`LieSuperalgebra::permuted`].
    pub fn permuted_algebra(&self, perm: &[usize]) -> Self {
        let (n, d) = (self.algebra.dim(), self.dim());
        let mut action = vec![T::zero(); n * d * d];
        for i in 0..n {
            let src = perm[i];
            action[i * d * d..(i + 1) * d * d]
                .clone_from_slice(&self.action[src * d * d..(src + 1) * d * d]);
        }
        Self {
            algebra: self.algebra.permuted(perm),
            space: self.space.clone(),
            action,
        }
    }
}

/// Validates the algebra, then parity compatibility and
/// `[x,y].v = x.(y.v) - (-1)^{|x||y|} y.(x.v)` on all basis triples.
pub fn validate_module<T: Scalar>(module: &ModuleAction<T>) -> Result<(), Violation> {
    let g = module.algebra();
    validate_superalgebra(g)?;
    let (n, d) = (g.dim(), module.dim());
    let sp = module.space();
    for i in 0..n {
        for m in 0..d {
            for (k, c) in module.act_basis(i, m).iter().enumerate() {
                if !c.is_zero() && sp.parity(k) != (g.parity(i) + sp.parity(m)) % 2 {
                    return Err(Violation::ModuleParity {
                        g: g.basis().name(i).into(),
                        m: sp.name(m).into(),
                        target: sp.name(k).into(),
                    });
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let xy = g.bracket_basis(i, j);
            for m in 0..d {
                let v = unit(d, m);
                let lhs = module.act(xy, &v);
                let mut rhs = module.act(&g.unit(i), module.act_basis(j, m));
                let s: T = -sign::<T>(g.parity(i), g.parity(j));
                axpy(
                    &mut rhs,
                    &s,
                    &module.act(&g.unit(j), module.act_basis(i, m)),
                );
                if lhs != rhs {
                    return Err(Violation::ModuleAxiom {
                        x: g.basis().name(i).into(),
                        y: g.basis().name(j).into(),
                        v: sp.name(m).into(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Linear map between super vector spaces; column `j` is the image of domain basis element `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedLinearMap<T> {
    domain: SuperBasis,
    codomain: SuperBasis,
    matrix: Matrix<T>,
}

impl<T: Scalar> GradedLinearMap<T> {
    pub fn new(domain: SuperBasis, codomain: SuperBasis, matrix: Matrix<T>) -> Result<Self> {
        if matrix.rows() != codomain.len() || matrix.cols() != domain.len() {
            return Err(Error::Shape(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                codomain.len(),
                domain.len()
            )));
        }
        Ok(Self {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn identity(basis: &SuperBasis) -> Self {
        Self {
            domain: basis.clone(),
            codomain: basis.clone(),
            matrix: Matrix::identity(basis.len()),
        }
    }

    pub fn zero(domain: &SuperBasis, codomain: &SuperBasis) -> Self {
        Self {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: Matrix::zeros(codomain.len(), domain.len()),
        }
    }

    pub fn domain(&self) -> &SuperBasis {
        &self.domain
    }

    pub fn codomain(&self) -> &SuperBasis {
        &self.codomain
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.matrix
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        self.matrix.mul_vec(v)
    }

    /// Homogeneous degree, `None` when the map mixes degrees. The zero map is even.
    pub fn degree(&self) -> Option<u8> {
        let mut seen = None;
        for r in 0..self.matrix.rows() {
            for c in 0..self.matrix.cols() {
                if self.matrix[(r, c)].is_zero() {
                    continue;
                }
                let d = (self.codomain.parity(r) + self.domain.parity(c)) % 2;
                match seen {
                    None => seen = Some(d),
                    Some(e) if e != d => return None,
                    _ => {}
                }
            }
        }
        Some(seen.unwrap_or(0))
    }

    pub fn is_even(&self) -> bool {
        self.degree() == Some(0)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if other.codomain != self.domain {
            return Err(Error::BasisMismatch(
                "composition of incompatible maps".into(),
            ));
        }
        Ok(Self {
            domain: other.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: &self.matrix * &other.matrix,
        })
    }
}

/// Even and bracket-preserving on all basis pairs.
pub fn is_homomorphism<T: Scalar>(
    phi: &GradedLinearMap<T>,
    g: &LieSuperalgebra<T>,
    h: &LieSuperalgebra<T>,
) -> Result<bool> {
    if phi.domain() != g.basis() || phi.codomain() != h.basis() {
        return Err(Error::BasisMismatch(format!(
            "map is {} -> {}, algebras are {} -> {}",
            phi.domain().names().join(","),
            phi.codomain().names().join(","),
            g.basis().names().join(","),
            h.basis().names().join(",")
        )));
    }
    Ok(phi.is_even() && preserves_brackets(phi.matrix(), g, h))
}

pub(crate) fn preserves_brackets<T: Scalar>(
    m: &Matrix<T>,
    g: &LieSuperalgebra<T>,
    h: &LieSuperalgebra<T>,
) -> bool {
    let images: Vec<Vec<T>> = (0..g.dim()).map(|i| m.column(i)).collect();
    (0..g.dim()).all(|i| {
        (0..g.dim()).all(|j| m.mul_vec(g.bracket_basis(i, j)) == h.bracket(&images[i], &images[j]))
    })
}

/// Quotient by the span of the indexed basis vectors.
///
/// The remaining basis elements, in order, represent the quotient basis, and
/// the returned projection sends each ideal basis vector to zero.
pub fn quotient_by_ideal<T: Scalar>(
    e: &LieSuperalgebra<T>,
    ideal: &[usize],
) -> Result<(LieSuperalgebra<T>, GradedLinearMap<T>)> {
    let n = e.dim();
    if let Some(&bad) = ideal.iter().find(|&&i| i >= n) {
        return Err(Error::Shape(format!("ideal index {bad} out of range")));
    }
    if !e.is_ideal(ideal) {
        return Err(Error::NotIdeal(
            ideal
                .iter()
                .map(|&i| e.basis().name(i).to_string())
                .collect(),
        ));
    }
    let rest: Vec<usize> = (0..n).filter(|k| !ideal.contains(k)).collect();
    let q = rest.len();
    let basis = e.basis().subset(&rest);
    let mut structure = Vec::with_capacity(q * q * q);
    for &i in &rest {
        for &j in &rest {
            let b = e.bracket_basis(i, j);
            structure.extend(rest.iter().map(|&k| b[k].clone()));
        }
    }
    let quotient =
        LieSuperalgebra::from_structure(format!("{}/ideal", e.name()), basis.clone(), structure)?;
    let proj = Matrix::from_fn(q, n, |r, c| if rest[r] == c { T::one() } else { T::zero() });
    let projection = GradedLinearMap::new(e.basis().clone(), basis, proj)?;
    Ok((quotient, projection))
}

/// `g ⋉ M` on the concatenated basis (g first), with its split extension record.
///
/// Bracket: `[(x,a),(y,b)] = ([x,y], x.b - (-1)^{|a||y|} y.a)`.
pub fn semidirect_product<T: Scalar>(
    module: &ModuleAction<T>,
) -> Result<(LieSuperalgebra<T>, AbelianExtension<T>)> {
    module.validate().map_err(Error::InvalidModule)?;
    let g = module.algebra();
    let (n, d) = (g.dim(), module.dim());
    let basis = g.basis().concat(module.space())?;
    let total = n + d;
    let mut structure = vec![T::zero(); total * total * total];
    let at = |i: usize, j: usize, k: usize| (i * total + j) * total + k;
    for i in 0..n {
        for j in 0..n {
            for (k, c) in g.bracket_basis(i, j).iter().enumerate() {
                structure[at(i, j, k)] = c.clone();
            }
        }
        for m in 0..d {
            let s: T = -sign::<T>(module.space().parity(m), g.parity(i));
            for (k, c) in module.act_basis(i, m).iter().enumerate() {
                structure[at(i, n + m, n + k)] = c.clone();
                structure[at(n + m, i, n + k)] = s.clone() * c.clone();
            }
        }
    }
    let name = format!("{}⋉{}", g.name(), module.space().names().join(""));
    let e = LieSuperalgebra::from_structure(name, basis, structure)?;
    let ideal: Vec<usize> = (n..total).collect();
    let ext = AbelianExtension::build(&e, &ideal)?;
    Ok((e, ext))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    #[test]
    fn fixture_algebras_validate() {
        assert_eq!(fixtures::heisenberg::<Q>().validate(), Ok(()));
        assert_eq!(fixtures::ba1::<Q>().validate(), Ok(()));
    }

    #[test]
    fn broken_antisymmetry_is_reported_at_reverse_pair() {
        let basis = SuperBasis::even(["x", "y", "z"]).unwrap();
        let z = vec![q(0), q(0), q(1)];
        let g =
            LieSuperalgebra::from_brackets("bad", basis, &[(0, 1, z.clone()), (1, 0, z)]).unwrap();
        assert_eq!(
            g.validate(),
            Err(Violation::Antisymmetry {
                left: "y".into(),
                right: "x".into()
            })
        );
    }

    #[test]
    fn duplicate_bracket_rejected() {
        let basis = SuperBasis::even(["x", "y"]).unwrap();
        let v = vec![q(0), q(0)];
        assert!(matches!(
            LieSuperalgebra::from_brackets("d", basis, &[(0, 1, v.clone()), (0, 1, v)]),
            Err(Error::DuplicateBracket { .. })
        ));
    }

    #[test]
    fn parity_violation_detected() {
        // [x, y] = y with x, y even but y listed odd.
        let basis = SuperBasis::new([("x", 0), ("y", 1)]).unwrap();
        let g = LieSuperalgebra::from_brackets("p", basis, &[(0, 1, vec![q(1), q(0)])]).unwrap();
        assert!(matches!(g.validate(), Err(Violation::Parity { .. })));
    }

    #[test]
    fn jacobi_violation_detected() {
        // [x,y]=y, [x,z]=z, [y,z]=x is not a Lie algebra.
        let basis = SuperBasis::even(["x", "y", "z"]).unwrap();
        let g = LieSuperalgebra::from_brackets(
            "j",
            basis,
            &[
                (0, 1, vec![q(0), q(1), q(0)]),
                (0, 2, vec![q(0), q(0), q(1)]),
                (1, 2, vec![q(1), q(0), q(0)]),
            ],
        )
        .unwrap();
        assert!(matches!(g.validate(), Err(Violation::Jacobi { .. })));
    }

    #[test]
    fn mixed_parity_names_rejected() {
        assert!(SuperBasis::new([("x", 2u8)]).is_err());
        assert!(SuperBasis::new([("x", 0u8), ("x", 1)]).is_err());
    }

    #[test]
    fn module_examples() {
        let t = LieSuperalgebra::<Q>::abelian("t", SuperBasis::even(["t"]).unwrap());
        let space = SuperBasis::even(["v1", "v2"]).unwrap();
        assert_eq!(
            ModuleAction::trivial(t.clone(), space.clone()).validate(),
            Ok(())
        );
        assert_eq!(fixtures::sd_module::<Q>().validate(), Ok(()));
        let nilpotent = ModuleAction::from_entries(t, space, &[(0, 0, vec![q(0), q(1)])]).unwrap();
        assert_eq!(nilpotent.validate(), Ok(()));
    }

    #[test]
    fn module_axiom_violation_detected() {
        // h3 acting on a line with x and y acting by nonzero scalars breaks [x,y] = z acting as 0.
        let h3 = fixtures::heisenberg::<Q>();
        let line = SuperBasis::even(["v"]).unwrap();
        let m = ModuleAction::from_entries(h3, line, &[(0, 0, vec![q(1)]), (2, 0, vec![q(1)])])
            .unwrap();
        assert!(matches!(m.validate(), Err(Violation::ModuleAxiom { .. })));
    }

    fn h3_map(cols: [[i64; 3]; 3]) -> GradedLinearMap<Q> {
        let b = fixtures::heisenberg::<Q>().basis().clone();
        let m = Matrix::from_fn(3, 3, |r, c| Q::from_int(cols[c][r]));
        GradedLinearMap::new(b.clone(), b, m).unwrap()
    }

    #[test]
    fn homomorphism_examples() {
        let h3 = fixtures::heisenberg::<Q>();
        let id = GradedLinearMap::identity(h3.basis());
        assert!(is_homomorphism(&id, &h3, &h3).unwrap());
        // x -> x + 2z, y -> y - 3z, z -> z
        let shear = h3_map([[1, 0, 2], [0, 1, -3], [0, 0, 1]]);
        assert!(is_homomorphism(&shear, &h3, &h3).unwrap());

        let ba1 = fixtures::ba1::<Q>();
        let m = Matrix::from_fn(3, 3, |r, c| match (r, c) {
            (0, 0) => q(2),
            (1, 1) => q(3),
            (2, 2) => q(1),
            _ => q(0),
        });
        let scale = GradedLinearMap::new(ba1.basis().clone(), ba1.basis().clone(), m).unwrap();
        assert!(!is_homomorphism(&scale, &ba1, &ba1).unwrap());
        assert!(is_homomorphism(&scale, &h3, &ba1).is_err());
    }

    #[test]
    fn composites_of_homomorphisms_are_homomorphisms() {
        let h3 = fixtures::heisenberg::<Q>();
        let maps = [
            h3_map([[1, 0, 2], [0, 1, -3], [0, 0, 1]]),
            h3_map([[2, 0, 0], [0, 3, 0], [0, 0, 6]]),
            h3_map([[0, 1, 0], [1, 0, 0], [0, 0, -1]]),
        ];
        for a in &maps {
            assert!(is_homomorphism(a, &h3, &h3).unwrap());
            for b in &maps {
                assert!(is_homomorphism(&a.compose(b).unwrap(), &h3, &h3).unwrap());
            }
        }
    }

    #[test]
    fn odd_map_is_not_a_homomorphism() {
        let ba1 = fixtures::ba1::<Q>();
        // x -> y mixes parity
        let m = Matrix::from_fn(3, 3, |r, c| if (r, c) == (1, 0) { q(1) } else { q(0) });
        let f = GradedLinearMap::new(ba1.basis().clone(), ba1.basis().clone(), m).unwrap();
        assert!(!f.is_even());
        assert!(!is_homomorphism(&f, &ba1, &ba1).unwrap());
    }

    #[test]
    fn quotients_of_fixtures() {
        let (g, p) = quotient_by_ideal(&fixtures::heisenberg::<Q>(), &[2]).unwrap();
        assert_eq!(g.dim(), 2);
        assert!(g.is_abelian());
        assert_eq!(g.validate(), Ok(()));
        assert_eq!(p.apply(&[q(0), q(0), q(5)]), vec![q(0), q(0)]);

        let (g, _) = quotient_by_ideal(&fixtures::ba1::<Q>(), &[2]).unwrap();
        assert_eq!(g.basis().parities(), &[0, 1]);
        assert!(g.is_abelian());

        let h3 = fixtures::heisenberg::<Q>();
        let (zero, _) = quotient_by_ideal(&h3, &[0, 1, 2]).unwrap();
        assert_eq!(zero.dim(), 0);
        assert!(matches!(
            quotient_by_ideal(&h3, &[0]),
            Err(Error::NotIdeal(_))
        ));
    }

    #[test]
    fn semidirect_examples() {
        let (e, ext) = semidirect_product(&fixtures::sd_module::<Q>()).unwrap();
        assert_eq!(e.dim(), 3);
        assert_eq!(e.validate(), Ok(()));
        assert_eq!(e.bracket_basis(0, 1), &[q(0), q(1), q(0)]);
        assert_eq!(e.bracket_basis(0, 2), &[q(0), q(0), q(1)]);
        assert!(ext.beta().is_zero());

        let ab2 = LieSuperalgebra::<Q>::abelian("ab2", SuperBasis::even(["u", "v"]).unwrap());
        let triv = ModuleAction::trivial(ab2, SuperBasis::even(["w"]).unwrap());
        let (ab3, _) = semidirect_product(&triv).unwrap();
        assert!(ab3.is_abelian());
        assert_eq!(ab3.dim(), 3);

        let (odd, ext) = semidirect_product(&fixtures::odd_line_module::<Q>()).unwrap();
        assert_eq!(odd.validate(), Ok(()));
        assert_eq!(odd.bracket_basis(0, 1), &[q(0), q(1)]);
        assert_eq!(odd.bracket_basis(1, 0), &[q(0), q(-1)]);
        // induced action coincides with the one we started from
        let m = fixtures::odd_line_module::<Q>();
        assert_eq!(ext.module().coefficients(), m.coefficients());
        assert_eq!(ext.module().space(), m.space());
        assert_eq!(ext.g().structure(), m.algebra().structure());
    }

    #[test]
    fn semidirect_of_odd_algebra_acting_on_odd_space() {
        let module = fixtures::mixed_module::<Q>();
        let (e, _) = semidirect_product(&module).unwrap();
        assert_eq!(e.validate(), Ok(()));
    }

    #[test]
    fn permutation_preserves_validity() {
        let ba1 = fixtures::ba1::<Q>();
        let p = ba1.permuted(&[2, 0, 1]);
        assert_eq!(p.validate(), Ok(()));
        assert_eq!(p.basis().names(), &["z", "x", "y"]);
        assert_eq!(p.bracket_basis(1, 2), &[q(1), q(0), q(0)]);
    }
}
