//! Machine checks of the exact sequences attached to an abelian extension.
//!
//! Linear stages are checked as subspace identities. The monoid stages are
//! checked pointwise on sampled endomorphisms, each with a verified witness
//! or a nonzero obstruction class.

use std::fmt::Display;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cohomology::{
    class_of, derivation_space, embed_entries, even_entries, h2_even, module_endomorphism_space,
    Cochain1, CohomologyClass,
};
use crate::error::{Error, Result};
use crate::extension::{AbelianExtension, END_A_OF_G, END_G_OF_A};
use crate::linalg::{kernel_basis, subspace_equal, Matrix, Subspace};
use crate::scalar::Scalar;
use crate::superalg::{semidirect_product, GradedLinearMap, ModuleAction};

/// One named pass/fail line of a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

fn check(name: impl Into<String>, pass: bool) -> Check {
    Check {
        name: name.into(),
        pass,
        detail: None,
    }
}

fn check_with(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        pass,
        detail: Some(detail.into()),
    }
}

fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

/// Something the engine computed that contradicts a commonly stated claim
/// about the extension. Never affects the verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub kind: String,
    pub detail: String,
}

pub fn strings<T: Display>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn matrix_strings<T: Scalar>(m: &GradedLinearMap<T>) -> Vec<Vec<String>> {
    m.matrix().to_strings()
}

/// Maps used as explicit samples; each must lie in the set a check expects.
#[derive(Debug, Clone, Default)]
pub struct Samples<T> {
    /// Endomorphisms of `a`.
    pub a_maps: Vec<GradedLinearMap<T>>,
    /// Endomorphisms of `g`.
    pub g_maps: Vec<GradedLinearMap<T>>,
}

/// Random nonzero rational with numerator in `[-9, 9]` and denominator in `[1, 4]`.
pub fn random_rational<T: Scalar>(rng: &mut impl Rng) -> T {
    let n: i64 = rng.gen_range(1..=9);
    let d: i64 = rng.gen_range(1..=4);
    let n = if rng.gen_bool(0.5) { -n } else { n };
    T::from_frac(n, d)
}

fn random_combination<T: Scalar>(space: &Subspace<T>, rng: &mut impl Rng) -> Vec<T> {
    let coords: Vec<T> = (0..space.dim()).map(|_| random_rational(rng)).collect();
    space.combine(&coords)
}

/// Deterministic pseudo-random element of `Z^1(e, a)_0`.
pub fn sample_cocycle<T: Scalar>(ext: &AbelianExtension<T>, seed: u64) -> Result<Cochain1<T>> {
    let z1 = derivation_space(ext.e_module())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ext.derivation_from_coords(&random_combination(&z1, &mut rng))
}

fn square<T: Scalar>(basis: &crate::superalg::SuperBasis, flat: Vec<T>) -> GradedLinearMap<T> {
    let n = basis.len();
    GradedLinearMap::new(
        basis.clone(),
        basis.clone(),
        Matrix::from_flat(n, n, flat).expect("square"),
    )
    .expect("shape")
}

/// Kernel of `v -> map(v)` restricted to `space`, as ambient vectors.
fn kernel_on<T: Scalar>(
    space: &Subspace<T>,
    target_dim: usize,
    mut map: impl FnMut(&[T]) -> Result<Vec<T>>,
) -> Result<Subspace<T>> {
    let mut columns = Vec::with_capacity(space.dim());
    for b in space.basis() {
        columns.push(map(b)?);
    }
    let m = Matrix::from_columns(target_dim, &columns)?;
    let k = kernel_basis(&m);
    Ok(Subspace::span(
        space.ambient_dim(),
        k.basis().iter().map(|c| space.combine(c)),
    )?)
}

fn image_on<T: Scalar>(
    space: &Subspace<T>,
    target_dim: usize,
    mut map: impl FnMut(&[T]) -> Result<Vec<T>>,
) -> Result<Subspace<T>> {
    let mut images = Vec::with_capacity(space.dim());
    for b in space.basis() {
        images.push(map(b)?);
    }
    Ok(Subspace::span(target_dim, images)?)
}

fn equal<T: Scalar>(u: &Subspace<T>, w: &Subspace<T>) -> Result<bool> {
    Ok(subspace_equal(u, w)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiveTermDims {
    pub z1_g: usize,
    pub z1_e: usize,
    pub end_g_a: usize,
    pub img_inf1: usize,
    pub ker_res: usize,
    pub img_res: usize,
    pub ker_d: usize,
    pub h2_g: usize,
    pub img_d: usize,
    pub ker_inf2: usize,
    pub h2_e: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct FiveTermReport {
    pub extension: String,
    pub dims: FiveTermDims,
    pub beta_class: Vec<String>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

/// `0 -> Z^1(g,a)_0 -> Z^1(e,a)_0 -> End_g(a) -> H^2(g,a)_0 -> H^2(e,a)_0`.
pub fn verify_five_term<T: Scalar>(ext: &AbelianExtension<T>) -> Result<FiveTermReport> {
    let (n_e, d) = (ext.e().dim(), ext.module().dim());
    let z1_g = derivation_space(ext.module())?;
    let z1_e = derivation_space(ext.e_module())?;
    let end = module_endomorphism_space(ext.module())?;
    let h2_g = ext.h2();
    let h2_e = std::sync::Arc::new(h2_even(ext.e_module())?);

    let g_map = |v: &[T]| {
        GradedLinearMap::new(
            ext.g().basis().clone(),
            ext.module().space().clone(),
            Matrix::from_flat(d, ext.g().dim(), v.to_vec()).expect("shape"),
        )
    };
    let a_map = |v: &[T]| square(ext.module().space(), v.to_vec());

    let img_inf1 = image_on(&z1_g, d * n_e, |v| {
        Ok(ext.inflation1(&g_map(v)?)?.into_matrix().into_flat())
    })?;
    let ker_res = kernel_on(&z1_e, d * d, |v| {
        Ok(ext
            .restriction1(&ext.derivation_from_coords(v)?)?
            .into_matrix()
            .into_flat())
    })?;
    let img_res = image_on(&z1_e, d * d, |v| {
        Ok(ext
            .restriction1(&ext.derivation_from_coords(v)?)?
            .into_matrix()
            .into_flat())
    })?;
    let ker_d = kernel_on(&end, h2_g.dim(), |v| {
        Ok(ext.connecting_d(&a_map(v))?.coords().to_vec())
    })?;
    let img_d = image_on(&end, h2_g.dim(), |v| {
        Ok(ext.connecting_d(&a_map(v))?.coords().to_vec())
    })?;

    let h2_full = Subspace::full(h2_g.dim());
    let inflate_class = |coords: &[T]| -> Result<Vec<T>> {
        let rep = crate::cohomology::Cochain2::from_coords(
            ext.beta().layout().clone(),
            h2_g.representative(coords),
        )?;
        Ok(class_of(&ext.inflation2(&rep)?, &h2_e)?.coords().to_vec())
    };
    let ker_inf2 = kernel_on(&h2_full, h2_e.dim(), inflate_class)?;
    let inf_beta = class_of(&ext.inflation2(ext.beta())?, &h2_e)?;

    let checks = vec![
        check_with(
            "inflation1 injective",
            img_inf1.dim() == z1_g.dim(),
            format!("rank {} of {}", img_inf1.dim(), z1_g.dim()),
        ),
        check("ker(res) = img(inf1)", equal(&ker_res, &img_inf1)?),
        check("img(res) = ker(d)", equal(&img_res, &ker_d)?),
        check("img(d) = ker(inf2)", equal(&img_d, &ker_inf2)?),
        check("inf2[β] = 0", inf_beta.is_zero()),
    ];
    let pass = all_pass(&checks);
    Ok(FiveTermReport {
        extension: ext.e().name().to_string(),
        dims: FiveTermDims {
            z1_g: z1_g.dim(),
            z1_e: z1_e.dim(),
            end_g_a: end.dim(),
            img_inf1: img_inf1.dim(),
            ker_res: ker_res.dim(),
            img_res: img_res.dim(),
            ker_d: ker_d.dim(),
            h2_g: h2_g.dim(),
            img_d: img_d.dim(),
            ker_inf2: ker_inf2.dim(),
            h2_e: h2_e.dim(),
        },
        beta_class: strings(ext.beta_class().coords()),
        checks,
        pass,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem1Dims {
    pub end_g_a_e: usize,
    pub end_ag: usize,
    pub ker_tilde_res: usize,
    pub end_g_of_a: usize,
    pub img_tilde_res: usize,
    pub ker_d: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem1Report {
    pub extension: String,
    pub dims: Theorem1Dims,
    pub pairs: usize,
    pub ring_failures: usize,
    pub tilde_res_surjective: bool,
    pub checks: Vec<Check>,
    pub pass: bool,
}

/// `1 -> End^{a,g}(e) -> End^g_a(e) -> End_g(a) -> H^2(g,a)_0`, in
/// `Ψ^{-1}` coordinates, plus ring identities on `pairs` random pairs.
pub fn verify_theorem1<T: Scalar>(
    ext: &AbelianExtension<T>,
    pairs: usize,
    seed: u64,
) -> Result<Theorem1Report> {
    let d = ext.module().dim();
    let z1_e = derivation_space(ext.e_module())?;
    let end = module_endomorphism_space(ext.module())?;
    let a_map = |v: &[T]| square(ext.module().space(), v.to_vec());
    let big = |v: &[T]| -> Result<GradedLinearMap<T>> { ext.psi(&ext.derivation_from_coords(v)?) };

    let ker_tr = kernel_on(&z1_e, d * d, |v| {
        Ok(ext.tilde_res(&big(v)?)?.into_matrix().into_flat())
    })?;
    let img_tr = image_on(&z1_e, d * d, |v| {
        Ok(ext.tilde_res(&big(v)?)?.into_matrix().into_flat())
    })?;
    let end_ag = ext.end_ag_space()?;
    let ker_d = kernel_on(&end, ext.h2().dim(), |v| {
        Ok(ext.connecting_d(&a_map(v))?.coords().to_vec())
    })?;
    let end_ag_in_g_a = end_ag.is_subspace_of(&z1_e)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    let id = GradedLinearMap::identity(ext.e().basis());
    for _ in 0..pairs {
        let h = ext.derivation_from_coords(&random_combination(&z1_e, &mut rng))?;
        let k = ext.derivation_from_coords(&random_combination(&z1_e, &mut rng))?;
        let u = ext.derivation_from_coords(&random_combination(&end_ag, &mut rng))?;
        let w = ext.derivation_from_coords(&random_combination(&end_ag, &mut rng))?;
        let (ph, pk, pu, pw) = (ext.psi(&h)?, ext.psi(&k)?, ext.psi(&u)?, ext.psi(&w)?);
        let sum = GradedLinearMap::new(
            h.domain().clone(),
            h.codomain().clone(),
            h.matrix() + k.matrix(),
        )?;
        let prod = GradedLinearMap::new(
            h.domain().clone(),
            h.codomain().clone(),
            h.matrix() * &(ext.inclusion().matrix() * k.matrix()),
        )?;
        let plus = ext.boxplus(&ph, &pk)?;
        let times = ext.boxtimes(&ph, &pk)?;
        let (rh, rk) = (ext.tilde_res(&ph)?, ext.tilde_res(&pk)?);
        let ok = ext.psi(&sum)? == plus
            && ext.psi(&prod)? == times
            && ext.star(&ph, &pk)? == ph.compose(&pk)?
            && ext.tilde_res(&plus)?.matrix() == &(rh.matrix() + rk.matrix())
            && ext.tilde_res(&times)? == rh.compose(&rk)?
            && ext.tilde_res(&id)?.matrix().is_zero()
            && ext.classify(&ext.boxplus(&pu, &pw)?)?.in_end_ag()
            && ext.classify(&ext.boxtimes(&pu, &pw)?)?.in_end_ag()
            && ext.classify(&ext.boxtimes(&ph, &pu)?)?.in_end_ag();
        if !ok {
            failures += 1;
        }
    }

    let end_ag_flags_ok = end_ag.basis().iter().all(|v| {
        ext.derivation_from_coords(v)
            .and_then(|f| ext.psi(&f))
            .and_then(|f| ext.classify(&f))
            .map(|fl| fl.in_end_ag())
            .unwrap_or(false)
    });
    let checks = vec![
        check(
            "End^{a,g}(e) ⊆ End^g_a(e)",
            end_ag_in_g_a && end_ag_flags_ok,
        ),
        check("ker(tilde_res) = End^{a,g}(e)", equal(&ker_tr, &end_ag)?),
        check("img(tilde_res) = ker(d)", equal(&img_tr, &ker_d)?),
        check_with(
            "ring identities",
            failures == 0,
            format!("{failures} of {pairs} pairs failed"),
        ),
    ];
    let pass = all_pass(&checks);
    Ok(Theorem1Report {
        extension: ext.e().name().to_string(),
        dims: Theorem1Dims {
            end_g_a_e: z1_e.dim(),
            end_ag: end_ag.dim(),
            ker_tilde_res: ker_tr.dim(),
            end_g_of_a: end.dim(),
            img_tilde_res: img_tr.dim(),
            ker_d: ker_d.dim(),
        },
        pairs,
        ring_failures: failures,
        tilde_res_surjective: img_tr.dim() == end.dim(),
        checks,
        pass,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct AutExtendSample {
    pub phi: Vec<Vec<String>>,
    pub d_class: Vec<String>,
    pub d_zero: bool,
    pub extends: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vec<String>>>,
    pub consistent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuasiregularSummary {
    pub tested: usize,
    pub invertible: usize,
    pub non_invertible: usize,
    pub consistent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Corollary1Report {
    pub extension: String,
    pub samples: Vec<AutExtendSample>,
    pub quasiregular: QuasiregularSummary,
    pub checks: Vec<Check>,
    pub pass: bool,
}

/// Random invertible elements of `End_g(a)`, plus `1` and `2`.
pub fn aut_g_a_candidates<T: Scalar>(
    ext: &AbelianExtension<T>,
    count: usize,
    rng: &mut impl Rng,
) -> Result<Vec<GradedLinearMap<T>>> {
    let a = ext.module().space();
    let d = a.len();
    let end = module_endomorphism_space(ext.module())?;
    let mut out = vec![
        GradedLinearMap::identity(a),
        square(a, Matrix::identity(d).scale(&T::from_int(2)).into_flat()),
    ];
    let mut tries = 0;
    while out.len() < count + 2 && tries < 10 * (count + 2) {
        tries += 1;
        let m = square(a, random_combination(&end, rng));
        if m.matrix().is_invertible() {
            out.push(m);
        }
    }
    Ok(out)
}

/// Aut-level connecting map against constructed extensions, and the
/// quasiregular elements of `End^g_a(e)` against invertible ones.
pub fn verify_corollary1<T: Scalar>(
    ext: &AbelianExtension<T>,
    samples: &Samples<T>,
    random: usize,
    seed: u64,
) -> Result<Corollary1Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = ext.module().space().clone();
    let d = a.len();
    let mut phis = samples.a_maps.clone();
    phis.extend(aut_g_a_candidates(ext, random, &mut rng)?);

    let mut out = Vec::new();
    for phi in &phis {
        if !ext.is_module_endomorphism(phi) {
            return Err(Error::NotMember {
                set: END_G_OF_A,
                reason: "sample is not an even module map".into(),
            });
        }
        let d_class = ext.connecting_d_aut(phi)?;
        let h = square(&a, (phi.matrix() - &Matrix::identity(d)).into_flat());
        let witness = match ext.extend_endomorphism(&h)? {
            Some(f) if f.matrix().is_invertible() => {
                let restricted = ext.restrict_to_ideal(&f)?;
                if restricted != *phi || !ext.classify(&f)?.in_end_g_a() {
                    return Err(Error::Internal("extension does not restrict to φ".into()));
                }
                Some(f)
            }
            _ => None,
        };
        let extends = witness.is_some();
        out.push(AutExtendSample {
            phi: matrix_strings(phi),
            d_class: strings(d_class.coords()),
            d_zero: d_class.is_zero(),
            extends,
            witness: witness.as_ref().map(matrix_strings),
            consistent: d_class.is_zero() == extends,
        });
    }

    // every *-invertible element must be bijective and conversely
    let z1_e = derivation_space(ext.e_module())?;
    let mut derivations: Vec<Vec<T>> = Vec::new();
    for b in z1_e.basis() {
        for c in [-2i64, -1, 1] {
            derivations.push(b.iter().map(|x| x.clone() * T::from_int(c)).collect());
        }
    }
    for _ in 0..random {
        derivations.push(random_combination(&z1_e, &mut rng));
    }
    derivations.push(vec![T::zero(); z1_e.ambient_dim()]);
    let (mut invertible, mut singular, mut consistent) = (0, 0, true);
    for v in &derivations {
        let f = ext.psi(&ext.derivation_from_coords(v)?)?;
        let bijective = f.matrix().is_invertible();
        let qr = ext.quasiregular_inverse(&f)?;
        if bijective {
            invertible += 1;
        } else {
            singular += 1;
        }
        consistent &= qr.is_some() == bijective;
    }

    let all_consistent = out.iter().all(|s| s.consistent);
    let checks = vec![
        check_with(
            "d(φ) = 0 ⇔ φ extends",
            all_consistent,
            format!("{} samples", out.len()),
        ),
        check_with(
            "QR(End^g_a(e)) = invertible elements",
            consistent,
            format!("{invertible} invertible, {singular} singular"),
        ),
    ];
    let pass = all_pass(&checks);
    Ok(Corollary1Report {
        extension: ext.e().name().to_string(),
        samples: out,
        quasiregular: QuasiregularSummary {
            tested: derivations.len(),
            invertible,
            non_invertible: singular,
            consistent,
        },
        checks,
        pass,
    })
}

/// Even `δ: g -> g` with `δ(x).a = 0` for all `x`, `a`, as flattened matrices.
pub fn action_kernel_maps<T: Scalar>(module: &ModuleAction<T>) -> Result<Subspace<T>> {
    let g = module.algebra();
    let (n, d) = (g.dim(), module.dim());
    let unknowns = even_entries(g.basis(), g.basis());
    let columns: Vec<Vec<T>> = unknowns
        .iter()
        .map(|&(l, x)| {
            let mut col = vec![T::zero(); n * d * d];
            let block = module.action_matrix(l).into_flat();
            col[x * d * d..(x + 1) * d * d].clone_from_slice(&block);
            col
        })
        .collect();
    let k = kernel_basis(&Matrix::from_columns(n * d * d, &columns)?);
    Ok(Subspace::new(
        n * n,
        k.basis()
            .iter()
            .map(|v| embed_entries(v, &unknowns, n, n).into_flat())
            .collect(),
    )?)
}

/// Candidates in `End^a(g)`: identity, then (for abelian `g`) `1 + δ` with
/// random `δ` killing the action, then pairwise composites of those.
pub fn end_a_g_candidates<T: Scalar>(
    ext: &AbelianExtension<T>,
    count: usize,
    rng: &mut impl Rng,
) -> Result<Vec<GradedLinearMap<T>>> {
    let g = ext.g().basis();
    let n = g.len();
    let mut base = vec![GradedLinearMap::identity(g)];
    if ext.g().is_abelian() {
        let space = action_kernel_maps(ext.module())?;
        for _ in 0..count {
            let delta = random_combination(&space, rng);
            base.push(square(
                g,
                (&Matrix::identity(n) + &Matrix::from_flat(n, n, delta)?).into_flat(),
            ));
        }
    }
    let mut out = base.clone();
    let k = base.len().min(4);
    for i in 1..k {
        for j in 1..k {
            out.push(base[i].compose(&base[j])?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct LiftSample {
    pub psi: Vec<Vec<String>>,
    pub automorphism: bool,
    pub chi: Vec<String>,
    pub chi_zero: bool,
    pub lifts: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vec<String>>>,
    pub consistent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem2Report {
    pub extension: String,
    pub end_ag: usize,
    pub samples: Vec<LiftSample>,
    pub sigma_pairs: usize,
    pub checks: Vec<Check>,
    pub discrepancies: Vec<Discrepancy>,
    pub pass: bool,
}

/// `1 -> End^{a,g}(e) -> End^a(e) -> End^a(g) -> H^2(g,a)_0` on samples.
pub fn verify_theorem2<T: Scalar>(
    ext: &AbelianExtension<T>,
    samples: &Samples<T>,
    random: usize,
    seed: u64,
) -> Result<Theorem2Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_g = ext.g().dim();
    let d = ext.module().dim();
    let id_g = GradedLinearMap::identity(ext.g().basis());

    // (i) the kernel of σ
    let end_ag = ext.end_ag_space()?;
    let z1_g = derivation_space(ext.module())?;
    let inflated = image_on(&z1_g, d * ext.e().dim(), |v| {
        let f = GradedLinearMap::new(
            ext.g().basis().clone(),
            ext.module().space().clone(),
            Matrix::from_flat(d, n_g, v.to_vec())?,
        )?;
        Ok(ext.inflation1(&f)?.into_matrix().into_flat())
    })?;
    let mut kernel_maps = Vec::new();
    for v in end_ag.basis() {
        kernel_maps.push(ext.psi(&ext.derivation_from_coords(v)?)?);
    }
    let mut kernel_ok = equal(&end_ag, &inflated)?;
    for u in &kernel_maps {
        kernel_ok &= ext.sigma(u)? == id_g;
    }

    // (ii) lifting against χ
    let mut psis: Vec<GradedLinearMap<T>> = samples.g_maps.clone();
    psis.extend(end_a_g_candidates(ext, random, &mut rng)?);
    let mut out = Vec::new();
    let mut witnesses = Vec::new();
    let mut non_lifting_auts = Vec::new();
    for psi in &psis {
        if !ext.is_action_preserving(psi)? {
            return Err(Error::NotMember {
                set: END_A_OF_G,
                reason: "sample does not preserve the action".into(),
            });
        }
        let chi = ext.chi(psi)?;
        let lift = ext.lift_endomorphism(psi)?;
        let automorphism = psi.matrix().is_invertible();
        if automorphism && lift.is_none() {
            non_lifting_auts.push(psi.clone());
        }
        out.push(LiftSample {
            psi: matrix_strings(psi),
            automorphism,
            chi: strings(chi.coords()),
            chi_zero: chi.is_zero(),
            lifts: lift.is_some(),
            witness: lift.as_ref().map(matrix_strings),
            consistent: chi.is_zero() == lift.is_some(),
        });
        if let Some(g) = lift {
            witnesses.push(g);
        }
    }

    // (iii) σ multiplicative, and σ(γ) = 1 only on End^{a,g}(e)
    let mut sigma_ok = true;
    let mut pairs = 0;
    let mut gammas = witnesses.clone();
    for u in kernel_maps.iter().take(2) {
        for w in witnesses.iter().take(3) {
            gammas.push(w.compose(u)?);
        }
    }
    for g1 in gammas.iter().take(6) {
        for g2 in gammas.iter().take(6) {
            let comp = g1.compose(g2)?;
            sigma_ok &= ext.sigma(&comp)? == ext.sigma(g1)?.compose(&ext.sigma(g2)?)?;
            pairs += 1;
        }
    }
    for g in &gammas {
        if ext.sigma(g)? == id_g {
            kernel_ok &= ext.classify(g)?.in_end_ag();
        }
    }

    let mut discrepancies = Vec::new();
    if !non_lifting_auts.is_empty() {
        let shown: Vec<String> = non_lifting_auts
            .iter()
            .take(3)
            .map(|m| format!("{:?}", m.matrix().to_strings()))
            .collect();
        discrepancies.push(Discrepancy {
            kind: "sigma-not-onto-automorphisms".into(),
            detail: format!(
                "{} sampled automorphisms of g preserving the action do not lift to e (χ ≠ 0), \
                 so σ: Aut^a(e) -> Aut^a(g) is not onto; e.g. {}",
                non_lifting_auts.len(),
                shown.join(", ")
            ),
        });
    }

    let checks = vec![
        check("ker(σ) = End^{a,g}(e)", kernel_ok),
        check_with(
            "lift exists ⇔ χ(ψ) = 0",
            out.iter().all(|s| s.consistent),
            format!("{} samples", out.len()),
        ),
        check_with("σ multiplicative", sigma_ok, format!("{pairs} pairs")),
    ];
    let pass = all_pass(&checks);
    Ok(Theorem2Report {
        extension: ext.e().name().to_string(),
        end_ag: end_ag.dim(),
        samples: out,
        sigma_pairs: pairs,
        checks,
        discrepancies,
        pass,
    })
}

/// `ε(φ)(x + a) = x + φ(a)` on `g ⋉ a`, in the given split extension.
pub fn epsilon<T: Scalar>(
    ext: &AbelianExtension<T>,
    phi: &GradedLinearMap<T>,
) -> Result<GradedLinearMap<T>> {
    let sp = ext.section().matrix() * ext.projection().matrix();
    let r = &Matrix::identity(ext.e().dim()) - &sp;
    let a_rows = r.submatrix(ext.ideal(), &(0..ext.e().dim()).collect::<Vec<_>>());
    let m = &sp + &(&(ext.inclusion().matrix() * phi.matrix()) * &a_rows);
    GradedLinearMap::new(ext.e().basis().clone(), ext.e().basis().clone(), m)
}

/// `α(ψ)(x + a) = ψ(x) + a`.
pub fn alpha<T: Scalar>(
    ext: &AbelianExtension<T>,
    psi: &GradedLinearMap<T>,
) -> Result<GradedLinearMap<T>> {
    let zero = GradedLinearMap::zero(ext.g().basis(), ext.module().space());
    GradedLinearMap::new(
        ext.e().basis().clone(),
        ext.e().basis().clone(),
        ext.lift_from_lambda(psi, &zero),
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct SectionSample {
    pub map: Vec<Vec<String>>,
    pub homomorphism: bool,
    pub in_target_set: bool,
    pub round_trip: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem3Report {
    pub algebra: String,
    pub epsilon: Vec<SectionSample>,
    pub alpha: Vec<SectionSample>,
    pub factorizations_g_a: usize,
    pub factorizations_a: usize,
    pub checks: Vec<Check>,
    pub pass: bool,
}

/// Splittings of the automorphism sequences of `g ⋉ a` by `ε` and `α`, and
/// unique factorization of sampled automorphisms through them.
pub fn verify_theorem3<T: Scalar>(
    module: &ModuleAction<T>,
    samples: &Samples<T>,
    random: usize,
    seed: u64,
) -> Result<Theorem3Report> {
    let (e, ext) = semidirect_product(module)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut phis = samples.a_maps.clone();
    phis.extend(aut_g_a_candidates(&ext, random, &mut rng)?);
    let mut psis = samples.g_maps.clone();
    psis.extend(
        end_a_g_candidates(&ext, random, &mut rng)?
            .into_iter()
            .filter(|m| m.matrix().is_invertible()),
    );

    let mut eps_samples = Vec::new();
    let mut eps_maps = Vec::new();
    for phi in &phis {
        if !ext.is_module_endomorphism(phi) || !phi.matrix().is_invertible() {
            return Err(Error::NotMember {
                set: "Aut_g(a)",
                reason: "sample is not an invertible module map".into(),
            });
        }
        let m = epsilon(&ext, phi)?;
        let flags = ext.classify(&m)?;
        let in_set = flags.in_end_g_a() && m.matrix().is_invertible();
        let round_trip = in_set && ext.restrict_to_ideal(&m)? == *phi;
        eps_samples.push(SectionSample {
            map: matrix_strings(&m),
            homomorphism: flags.homomorphism,
            in_target_set: in_set,
            round_trip,
        });
        eps_maps.push((phi.clone(), m));
    }
    let mut alpha_samples = Vec::new();
    let mut alpha_maps = Vec::new();
    for psi in &psis {
        if !ext.is_action_preserving(psi)? || !psi.matrix().is_invertible() {
            return Err(Error::NotMember {
                set: "Aut^a(g)",
                reason: "sample is not an action-preserving automorphism".into(),
            });
        }
        let m = alpha(&ext, psi)?;
        let flags = ext.classify(&m)?;
        let in_set = flags.in_end_a() && m.matrix().is_invertible();
        let round_trip = in_set && ext.sigma(&m)? == *psi;
        alpha_samples.push(SectionSample {
            map: matrix_strings(&m),
            homomorphism: flags.homomorphism,
            in_target_set: in_set,
            round_trip,
        });
        alpha_maps.push((psi.clone(), m));
    }

    // Aut^{a,g}(e) samples
    let end_ag = ext.end_ag_space()?;
    let mut units = vec![GradedLinearMap::identity(e.basis())];
    for _ in 0..random.max(1) {
        units.push(ext.psi(&ext.derivation_from_coords(&random_combination(&end_ag, &mut rng))?)?);
    }

    let inverse = |m: &GradedLinearMap<T>| -> Result<GradedLinearMap<T>> {
        let inv = m.matrix().inverse().ok_or(Error::NotInvertible)?;
        GradedLinearMap::new(e.basis().clone(), e.basis().clone(), inv)
    };
    let mut fact_ga_ok = true;
    let mut fact_ga = 0;
    for (phi, eps) in &eps_maps {
        for u in &units {
            let gamma = eps.compose(u)?;
            let flags = ext.classify(&gamma)?;
            fact_ga_ok &= flags.in_end_g_a() && gamma.matrix().is_invertible();
            let phi2 = ext.restrict_to_ideal(&gamma)?;
            let u2 = inverse(&epsilon(&ext, &phi2)?)?.compose(&gamma)?;
            fact_ga_ok &= phi2 == *phi && u2 == *u && ext.classify(&u2)?.in_end_ag();
            fact_ga += 1;
        }
    }
    // elements of Aut^g_a(e) not built from ε
    let z1_e = derivation_space(ext.e_module())?;
    for _ in 0..random {
        let gamma = ext.psi(&ext.derivation_from_coords(&random_combination(&z1_e, &mut rng))?)?;
        if !gamma.matrix().is_invertible() {
            continue;
        }
        let phi2 = ext.restrict_to_ideal(&gamma)?;
        let u2 = inverse(&epsilon(&ext, &phi2)?)?.compose(&gamma)?;
        fact_ga_ok &=
            ext.classify(&u2)?.in_end_ag() && epsilon(&ext, &phi2)?.compose(&u2)? == gamma;
        fact_ga += 1;
    }

    let mut fact_a_ok = true;
    let mut fact_a = 0;
    for (psi, al) in &alpha_maps {
        for u in &units {
            let gamma = al.compose(u)?;
            fact_a_ok &= ext.classify(&gamma)?.in_end_a() && gamma.matrix().is_invertible();
            let psi2 = ext.sigma(&gamma)?;
            let u2 = inverse(&alpha(&ext, &psi2)?)?.compose(&gamma)?;
            fact_a_ok &= psi2 == *psi && u2 == *u && ext.classify(&u2)?.in_end_ag();
            fact_a += 1;
        }
    }

    let checks = vec![
        check(
            "ε(φ) ∈ Aut^g_a(e) and ε(φ)|_a = φ",
            eps_samples
                .iter()
                .all(|s| s.homomorphism && s.in_target_set && s.round_trip),
        ),
        check(
            "α(ψ) ∈ Aut^a(e) and σ(α(ψ)) = ψ",
            alpha_samples
                .iter()
                .all(|s| s.homomorphism && s.in_target_set && s.round_trip),
        ),
        check_with(
            "Aut^g_a(e) = ε(Aut_g(a)) · Aut^{a,g}(e) uniquely",
            fact_ga_ok,
            format!("{fact_ga} elements"),
        ),
        check_with(
            "Aut^a(e) = α(Aut^a(g)) · Aut^{a,g}(e) uniquely",
            fact_a_ok,
            format!("{fact_a} elements"),
        ),
    ];
    let pass = all_pass(&checks);
    Ok(Theorem3Report {
        algebra: e.name().to_string(),
        epsilon: eps_samples,
        alpha: alpha_samples,
        factorizations_g_a: fact_ga,
        factorizations_a: fact_a,
        checks,
        pass,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub extension: String,
    pub tested: usize,
    pub solvable: usize,
    pub disagreements: usize,
    pub pass: bool,
}

/// Direct solvability of "even derivation `f: e -> a` with `f|_a = φ`"
/// against vanishing of `-[φ β]`, on a basis of `End_g(a)` and `random`
/// random elements.
pub fn verify_extension_oracle<T: Scalar>(
    ext: &AbelianExtension<T>,
    random: usize,
    seed: u64,
) -> Result<OracleReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let end = module_endomorphism_space(ext.module())?;
    let mut phis: Vec<Vec<T>> = end.basis().to_vec();
    for _ in 0..random {
        phis.push(random_combination(&end, &mut rng));
    }
    let (mut solvable, mut bad) = (0, 0);
    for v in &phis {
        let phi = square(ext.module().space(), v.clone());
        let direct = ext.solve_derivation_with_restriction(&phi)?.is_some();
        let class: CohomologyClass<T> = ext.connecting_d(&phi)?;
        if direct {
            solvable += 1;
        }
        if direct != class.is_zero() {
            bad += 1;
        }
    }
    Ok(OracleReport {
        extension: ext.e().name().to_string(),
        tested: phis.len(),
        solvable,
        disagreements: bad,
        pass: bad == 0,
    })
}
