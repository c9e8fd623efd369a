//! Low-degree cochains of a Lie superalgebra with values in a module.
//!
//! 1-cochains are [`GradedLinearMap`]s, flattened row-major when placed in a
//! [`Subspace`]. 2-cochains store one value per unordered pair of basis
//! elements (the diagonal only for odd elements); the other orientation is
//! given by super-antisymmetry.
//!
//! A 2-cochain `β` is a cocycle iff `g ⊕ M` with bracket
//! `[(x,a),(y,b)] = ([x,y], x.b - (-1)^{|a||y|} y.a + β(x,y))`
//! satisfies super-Jacobi. These conditions are linear in `β`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{
    axpy, is_zero_vec, kernel_basis, quotient_presentation, Matrix, QuotientPresentation, Subspace,
};
use crate::scalar::{sign, Scalar};
use crate::superalg::{unit, GradedLinearMap, ModuleAction, SuperBasis};

/// Even linear map `g -> M`.
pub type Cochain1<T> = GradedLinearMap<T>;

/// Index layout of homogeneous 2-cochains `g x g -> M` of a given degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain2Layout {
    src: SuperBasis,
    dst: SuperBasis,
    degree: u8,
    entries: Vec<(usize, usize, usize)>,
    index: Vec<Option<usize>>,
}

impl Cochain2Layout {
    pub fn new(src: &SuperBasis, dst: &SuperBasis, degree: u8) -> Self {
        let (n, m) = (src.len(), dst.len());
        let mut entries = Vec::new();
        let mut index = vec![None; n * n * m];
        for i in 0..n {
            for j in i..n {
                if i == j && src.parity(i) == 0 {
                    continue;
                }
                for k in 0..m {
                    if dst.parity(k) == (src.parity(i) + src.parity(j) + degree) % 2 {
                        index[(i * n + j) * m + k] = Some(entries.len());
                        entries.push((i, j, k));
                    }
                }
            }
        }
        Self {
            src: src.clone(),
            dst: dst.clone(),
            degree,
            entries,
            index,
        }
    }

    /// Number of free coordinates.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn src(&self) -> &SuperBasis {
        &self.src
    }

    pub fn dst(&self) -> &SuperBasis {
        &self.dst
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    /// `(i, j, k)` for each coordinate: the `a_k` component of `β(b_i, b_j)`, `i <= j`.
    pub fn entries(&self) -> &[(usize, usize, usize)] {
        &self.entries
    }

    fn slot(&self, i: usize, j: usize, k: usize) -> Option<usize> {
        let (n, m) = (self.src.len(), self.dst.len());
        self.index[(i * n + j) * m + k]
    }
}

/// Homogeneous super-antisymmetric bilinear map `g x g -> M`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cochain2<T> {
    layout: Arc<Cochain2Layout>,
    values: Vec<T>,
}

impl<T: Scalar> Cochain2<T> {
    pub fn zero(layout: Arc<Cochain2Layout>) -> Self {
        let values = vec![T::zero(); layout.len()];
        Self { layout, values }
    }

    pub fn from_coords(layout: Arc<Cochain2Layout>, values: Vec<T>) -> Result<Self> {
        if values.len() != layout.len() {
            return Err(Error::Shape(format!(
                "expected {} cochain coordinates, found {}",
                layout.len(),
                values.len()
            )));
        }
        Ok(Self { layout, values })
    }

    /// Evaluates `f(i, j)` on every ordered pair of basis elements and checks
    /// super-antisymmetry and the degree before storing.
    pub fn from_fn(
        layout: Arc<Cochain2Layout>,
        mut f: impl FnMut(usize, usize) -> Vec<T>,
    ) -> Result<Self> {
        let (n, m) = (layout.src.len(), layout.dst.len());
        let table: Vec<Vec<T>> = (0..n * n).map(|ij| f(ij / n, ij % n)).collect();
        let mut values = vec![T::zero(); layout.len()];
        for i in 0..n {
            for j in 0..n {
                let v = &table[i * n + j];
                if v.len() != m {
                    return Err(Error::Shape("cochain value has wrong length".into()));
                }
                let s: T = -sign::<T>(layout.src.parity(i), layout.src.parity(j));
                let rev = &table[j * n + i];
                if v.iter().zip(rev).any(|(a, b)| *a != s.clone() * b.clone()) {
                    return Err(Error::BadCochain(format!(
                        "super-antisymmetry at ({}, {})",
                        layout.src.name(i),
                        layout.src.name(j)
                    )));
                }
                if i > j {
                    continue;
                }
                for (k, x) in v.iter().enumerate() {
                    match layout.slot(i, j, k) {
                        Some(p) => values[p] = x.clone(),
                        None if x.is_zero() => {}
                        None => {
                            return Err(Error::BadCochain(format!(
                                "degree {} at ({}, {}) -> {}",
                                layout.degree,
                                layout.src.name(i),
                                layout.src.name(j),
                                layout.dst.name(k)
                            )))
                        }
                    }
                }
            }
        }
        Ok(Self { layout, values })
    }

    pub fn layout(&self) -> &Arc<Cochain2Layout> {
        &self.layout
    }

    pub fn coords(&self) -> &[T] {
        &self.values
    }

    pub fn degree(&self) -> u8 {
        self.layout.degree
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.values)
    }

    /// `β(b_i, b_j)` in module coordinates.
    pub fn get(&self, i: usize, j: usize) -> Vec<T> {
        let l = &self.layout;
        let m = l.dst.len();
        let (a, b, s) = if i <= j {
            (i, j, T::one())
        } else {
            (j, i, -sign::<T>(l.src.parity(i), l.src.parity(j)))
        };
        (0..m)
            .map(|k| match l.slot(a, b, k) {
                Some(p) => s.clone() * self.values[p].clone(),
                None => T::zero(),
            })
            .collect()
    }

    /// Bilinear extension to coordinate vectors.
    pub fn eval(&self, u: &[T], v: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.layout.dst.len()];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if !vj.is_zero() {
                    axpy(&mut out, &(ui.clone() * vj.clone()), &self.get(i, j));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.layout, other.layout, "cochain layout mismatch");
        Self {
            layout: self.layout.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-T::one()))
    }

    pub fn scale(&self, s: &T) -> Self {
        Self {
            layout: self.layout.clone(),
            values: self.values.iter().map(|x| x.clone() * s.clone()).collect(),
        }
    }

    /// `f ∘ β` for an even `f: M -> M`.
    pub fn compose_values(&self, f: &Matrix<T>) -> Self {
        let m = self.layout.dst.len();
        assert_eq!((f.rows(), f.cols()), (m, m), "value map shape mismatch");
        let values = self
            .layout
            .entries
            .iter()
            .map(|&(i, j, k)| {
                let v = self.get(i, j);
                crate::linalg::dot(f.row(k), &v)
            })
            .collect();
        Self {
            layout: self.layout.clone(),
            values,
        }
    }

    /// `(u, v) -> β(φu, φv)` for an even `φ: src' -> src`.
    pub fn pullback(&self, phi: &GradedLinearMap<T>) -> Result<Self> {
        if phi.codomain() != &self.layout.src {
            return Err(Error::BasisMismatch(
                "pullback along a map into another space".into(),
            ));
        }
        if !phi.is_even() {
            return Err(Error::NotEven("pullback map".into()));
        }
        let layout = Arc::new(Cochain2Layout::new(
            phi.domain(),
            &self.layout.dst,
            self.layout.degree,
        ));
        let images: Vec<Vec<T>> = (0..phi.domain().len())
            .map(|i| phi.matrix().column(i))
            .collect();
        Self::from_fn(layout, |i, j| self.eval(&images[i], &images[j]))
    }
}

pub fn even_layout<T: Scalar>(module: &ModuleAction<T>) -> Arc<Cochain2Layout> {
    Arc::new(Cochain2Layout::new(
        module.algebra().basis(),
        module.space(),
        0,
    ))
}

fn check_cochain1<T: Scalar>(lambda: &Cochain1<T>, module: &ModuleAction<T>) -> Result<()> {
    if lambda.domain() != module.algebra().basis() || lambda.codomain() != module.space() {
        return Err(Error::BasisMismatch(
            "1-cochain does not match g -> M".into(),
        ));
    }
    if !lambda.is_even() {
        return Err(Error::NotEven("1-cochain".into()));
    }
    Ok(())
}

/// `δλ(x,y) = x.λ(y) - (-1)^{|x||y|} y.λ(x) - λ([x,y])`.
pub fn delta1<T: Scalar>(lambda: &Cochain1<T>, module: &ModuleAction<T>) -> Result<Cochain2<T>> {
    check_cochain1(lambda, module)?;
    let g = module.algebra();
    let images: Vec<Vec<T>> = (0..g.dim()).map(|i| lambda.matrix().column(i)).collect();
    Cochain2::from_fn(even_layout(module), |i, j| {
        let mut out = module.act(&g.unit(i), &images[j]);
        let s: T = -sign::<T>(g.parity(i), g.parity(j));
        axpy(&mut out, &s, &module.act(&g.unit(j), &images[i]));
        axpy(&mut out, &-T::one(), &lambda.apply(g.bracket_basis(i, j)));
        out
    })
}

/// Positions `(row, col)` of the even entries of a `codomain x domain` matrix.
pub(crate) fn even_entries(domain: &SuperBasis, codomain: &SuperBasis) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for r in 0..codomain.len() {
        for c in 0..domain.len() {
            if codomain.parity(r) == domain.parity(c) {
                out.push((r, c));
            }
        }
    }
    out
}

/// Linear equations on the even entries of `f: g -> M` expressing the
/// derivation rule `f([x,y]) = x.f(y) - (-1)^{|x||y|} y.f(x)`.
///
/// Returns the constraint matrix and the entry each column stands for.
pub(crate) fn derivation_system<T: Scalar>(
    module: &ModuleAction<T>,
) -> (Matrix<T>, Vec<(usize, usize)>) {
    let g = module.algebra();
    let (n, d) = (g.dim(), module.dim());
    let unknowns = even_entries(g.basis(), module.space());
    let col_of = |r: usize, c: usize| unknowns.iter().position(|&u| u == (r, c));
    let mut rows: Vec<Vec<T>> = Vec::new();
    for i in 0..n {
        for j in i..n {
            let s: T = sign::<T>(g.parity(i), g.parity(j));
            for r in 0..d {
                let mut row = vec![T::zero(); unknowns.len()];
                for (l, c) in g.bracket_basis(i, j).iter().enumerate() {
                    if let (false, Some(col)) = (c.is_zero(), col_of(r, l)) {
                        row[col] = row[col].clone() + c.clone();
                    }
                }
                for nn in 0..d {
                    let a = &module.act_basis(i, nn)[r];
                    if let (false, Some(col)) = (a.is_zero(), col_of(nn, j)) {
                        row[col] = row[col].clone() - a.clone();
                    }
                    let b = &module.act_basis(j, nn)[r];
                    if let (false, Some(col)) = (b.is_zero(), col_of(nn, i)) {
                        row[col] = row[col].clone() + s.clone() * b.clone();
                    }
                }
                if !is_zero_vec(&row) {
                    rows.push(row);
                }
            }
        }
    }
    let width = unknowns.len();
    let mat = Matrix::from_fn(rows.len(), width, |r, c| rows[r][c].clone());
    (mat, unknowns)
}

pub(crate) fn embed_entries<T: Scalar>(
    values: &[T],
    unknowns: &[(usize, usize)],
    rows: usize,
    cols: usize,
) -> Matrix<T> {
    let mut m = Matrix::zeros(rows, cols);
    for (v, &(r, c)) in values.iter().zip(unknowns) {
        m[(r, c)] = v.clone();
    }
    m
}

/// `Z^1(g, M)_0`, as a subspace of flattened `dim M x dim g` matrices.
pub fn derivation_space<T: Scalar>(module: &ModuleAction<T>) -> Result<Subspace<T>> {
    module.validate().map_err(Error::InvalidModule)?;
    let (system, unknowns) = derivation_system(module);
    let (n, d) = (module.algebra().dim(), module.dim());
    let kernel = kernel_basis(&system);
    let basis = kernel
        .basis()
        .iter()
        .map(|v| embed_entries(v, &unknowns, d, n).into_flat())
        .collect();
    Ok(Subspace::new(n * d, basis)?)
}

pub fn is_derivation<T: Scalar>(f: &Cochain1<T>, module: &ModuleAction<T>) -> bool {
    if check_cochain1(f, module).is_err() {
        return false;
    }
    let g = module.algebra();
    let images: Vec<Vec<T>> = (0..g.dim()).map(|i| f.matrix().column(i)).collect();
    (0..g.dim()).all(|i| {
        (0..g.dim()).all(|j| {
            let mut rhs = module.act(&g.unit(i), &images[j]);
            let s: T = -sign::<T>(g.parity(i), g.parity(j));
            axpy(&mut rhs, &s, &module.act(&g.unit(j), &images[i]));
            f.apply(g.bracket_basis(i, j)) == rhs
        })
    })
}

/// Inner derivations `x -> x.m` for even `m`.
pub fn inner_derivations<T: Scalar>(module: &ModuleAction<T>) -> Result<Subspace<T>> {
    let g = module.algebra();
    let (n, d) = (g.dim(), module.dim());
    let vectors = (0..d).filter(|&m| module.space().parity(m) == 0).map(|m| {
        let v = unit(d, m);
        Matrix::from_fn(d, n, |r, c| module.act(&g.unit(c), &v)[r].clone()).into_flat()
    });
    Ok(Subspace::span(n * d, vectors)?)
}

/// `H^1(g, M)_0 = Der / Inn`.
pub fn h1_even<T: Scalar>(module: &ModuleAction<T>) -> Result<QuotientPresentation<T>> {
    Ok(quotient_presentation(
        &derivation_space(module)?,
        &inner_derivations(module)?,
    )?)
}

/// Bracket on `g ⊕ M` twisted by `β`, on `(g-part, M-part)` pairs.
fn twisted_bracket<T: Scalar>(
    module: &ModuleAction<T>,
    beta: &Cochain2<T>,
    (u, a): (&[T], &[T]),
    (v, b): (&[T], &[T]),
) -> (Vec<T>, Vec<T>) {
    let g = module.algebra();
    let sp = module.space();
    let top = g.bracket(u, v);
    let mut low = module.act(u, b);
    for (l, vl) in v.iter().enumerate() {
        if vl.is_zero() {
            continue;
        }
        for (nn, an) in a.iter().enumerate() {
            if an.is_zero() {
                continue;
            }
            let s: T = -sign::<T>(sp.parity(nn), g.parity(l));
            axpy(
                &mut low,
                &(s * vl.clone() * an.clone()),
                module.act_basis(l, nn),
            );
        }
    }
    axpy(&mut low, &T::one(), &beta.eval(u, v));
    (top, low)
}

/// Super-Jacobi residual of the twisted bracket over basis triples of `g`
/// with `i <= j <= k`, concatenated.
///
/// The Jacobiator of a super-antisymmetric bracket is super-alternating, so
/// sorted triples determine all others.
fn twisted_jacobi_residual<T: Scalar>(module: &ModuleAction<T>, beta: &Cochain2<T>) -> Vec<T> {
    let g = module.algebra();
    let (n, d) = (g.dim(), module.dim());
    let zero_m = vec![T::zero(); d];
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                let (x, y, z) = (g.unit(i), g.unit(j), g.unit(k));
                let xy = twisted_bracket(module, beta, (&x, &zero_m), (&y, &zero_m));
                let lhs = twisted_bracket(module, beta, (&xy.0, &xy.1), (&z, &zero_m));
                let yz = twisted_bracket(module, beta, (&y, &zero_m), (&z, &zero_m));
                let r1 = twisted_bracket(module, beta, (&x, &zero_m), (&yz.0, &yz.1));
                let xz = twisted_bracket(module, beta, (&x, &zero_m), (&z, &zero_m));
                let r2 = twisted_bracket(module, beta, (&y, &zero_m), (&xz.0, &xz.1));
                let s: T = sign::<T>(g.parity(i), g.parity(j));
                for (idx, (l, a)) in lhs
                    .0
                    .iter()
                    .chain(&lhs.1)
                    .zip(r1.0.iter().chain(&r1.1))
                    .enumerate()
                {
                    let b = if idx < n { &r2.0[idx] } else { &r2.1[idx - n] };
                    out.push(l.clone() - a.clone() + s.clone() * b.clone());
                }
            }
        }
    }
    out
}

/// Whether `β` is an even 2-cocycle; assumes `module` validates.
pub fn is_cocycle2<T: Scalar>(beta: &Cochain2<T>, module: &ModuleAction<T>) -> bool {
    beta.layout().as_ref() == even_layout(module).as_ref()
        && is_zero_vec(&twisted_jacobi_residual(module, beta))
}

/// `Z^2(g, M)_0` in the coordinates of [`even_layout`].
pub fn z2_even_basis<T: Scalar>(module: &ModuleAction<T>) -> Result<Subspace<T>> {
    module.validate().map_err(Error::InvalidModule)?;
    let layout = even_layout(module);
    let base = twisted_jacobi_residual(module, &Cochain2::zero(layout.clone()));
    if !is_zero_vec(&base) {
        return Err(Error::Internal(
            "Jacobi residual at β = 0 does not vanish".into(),
        ));
    }
    let columns: Vec<Vec<T>> = (0..layout.len())
        .map(|p| {
            let beta = Cochain2::from_coords(layout.clone(), unit(layout.len(), p)).unwrap();
            twisted_jacobi_residual(module, &beta)
        })
        .collect();
    let system = Matrix::from_columns(base.len(), &columns)?;
    let kernel = kernel_basis(&system);
    Ok(kernel)
}

/// `B^2(g, M)_0 = δ(C^1(g, M)_0)`.
pub fn b2_even_basis<T: Scalar>(module: &ModuleAction<T>) -> Result<Subspace<T>> {
    let g = module.algebra();
    let (n, d) = (g.dim(), module.dim());
    let layout = even_layout(module);
    let mut images = Vec::new();
    for (r, c) in even_entries(g.basis(), module.space()) {
        let mut m = Matrix::zeros(d, n);
        m[(r, c)] = T::one();
        let lambda = GradedLinearMap::new(g.basis().clone(), module.space().clone(), m)?;
        images.push(delta1(&lambda, module)?.coords().to_vec());
    }
    Ok(Subspace::span(layout.len(), images)?)
}

/// `H^2(g, M)_0 = Z^2 / B^2`.
pub fn h2_even<T: Scalar>(module: &ModuleAction<T>) -> Result<QuotientPresentation<T>> {
    Ok(quotient_presentation(
        &z2_even_basis(module)?,
        &b2_even_basis(module)?,
    )?)
}

/// A class in a quotient presentation, by complement coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct CohomologyClass<T> {
    presentation: Arc<QuotientPresentation<T>>,
    coords: Vec<T>,
}

impl<T: Scalar> CohomologyClass<T> {
    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn presentation(&self) -> &Arc<QuotientPresentation<T>> {
        &self.presentation
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.coords)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self {
            presentation: self.presentation.clone(),
            coords: self.coords.iter().map(|x| x.clone() * s.clone()).collect(),
        }
    }
}

pub fn class_of<T: Scalar>(
    beta: &Cochain2<T>,
    presentation: &Arc<QuotientPresentation<T>>,
) -> Result<CohomologyClass<T>> {
    let v = beta.coords();
    if v.len() != presentation.ambient().ambient_dim() {
        return Err(Error::BasisMismatch(
            "cochain does not match the presentation".into(),
        ));
    }
    if !presentation.ambient().contains(v)? {
        return Err(Error::NotCocycle);
    }
    Ok(CohomologyClass {
        presentation: presentation.clone(),
        coords: presentation.class_coordinates(v)?,
    })
}

pub fn class_is_zero<T: Scalar>(class: &CohomologyClass<T>) -> bool {
    class.is_zero()
}

/// `(h ∪ f)(x,y) = (-1)^{|f|(|x|+|y|)} (-1)^{|f||h(x,y)|} f(h(x,y))`, for homogeneous `f: M -> M`.
pub fn cup_2_1<T: Scalar>(h: &Cochain2<T>, f: &GradedLinearMap<T>) -> Result<Cochain2<T>> {
    let dst = h.layout().dst().clone();
    if f.domain() != &dst || f.codomain() != &dst {
        return Err(Error::BasisMismatch(
            "cup product factor must be an endomorphism of the values".into(),
        ));
    }
    let fd = f.degree().ok_or(Error::NotHomogeneous)?;
    let src = h.layout().src().clone();
    let layout = Arc::new(Cochain2Layout::new(&src, &dst, (h.degree() + fd) % 2));
    Cochain2::from_fn(layout, |i, j| {
        let hv = h.get(i, j);
        let mut out = vec![T::zero(); dst.len()];
        let outer: T = sign::<T>(fd, (src.parity(i) + src.parity(j)) % 2);
        for (k, c) in hv.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s: T = outer.clone() * sign::<T>(fd, dst.parity(k));
            axpy(&mut out, &(s * c.clone()), &f.matrix().column(k));
        }
        out
    })
}

/// Whether `φ: M -> M` is even and commutes with the action.
pub fn is_module_endomorphism<T: Scalar>(
    phi: &GradedLinearMap<T>,
    module: &ModuleAction<T>,
) -> bool {
    if phi.domain() != module.space() || phi.codomain() != module.space() || !phi.is_even() {
        return false;
    }
    let m = phi.matrix();
    (0..module.algebra().dim()).all(|i| {
        let a = module.action_matrix(i);
        &a * m == m * &a
    })
}

/// `End_g(M)`: even module endomorphisms, as flattened `dim M x dim M` matrices.
pub fn module_endomorphism_space<T: Scalar>(module: &ModuleAction<T>) -> Result<Subspace<T>> {
    let d = module.dim();
    let unknowns = even_entries(module.space(), module.space());
    let mut columns = Vec::with_capacity(unknowns.len());
    for &(r, c) in &unknowns {
        let mut e = Matrix::zeros(d, d);
        e[(r, c)] = T::one();
        let mut residual = Vec::new();
        for i in 0..module.algebra().dim() {
            let a = module.action_matrix(i);
            residual.extend((&(&a * &e) - &(&e * &a)).into_flat());
        }
        columns.push(residual);
    }
    let rows = module.algebra().dim() * d * d;
    let kernel = kernel_basis(&Matrix::from_columns(rows, &columns)?);
    let basis = kernel
        .basis()
        .iter()
        .map(|v| embed_entries(v, &unknowns, d, d).into_flat())
        .collect();
    Ok(Subspace::new(d * d, basis)?)
}
