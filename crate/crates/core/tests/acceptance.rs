//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use common::{ce_dims, fr, q};
use superext::cohomology::{
    class_of, delta1, derivation_space, h2_even, module_endomorphism_space,
};
use superext::extension::AbelianExtension;
use superext::fixtures;
use superext::linalg::{subspace_equal, Matrix, Subspace};
use superext::sequences::{
    end_a_g_candidates, verify_corollary1, verify_extension_oracle, verify_five_term,
    verify_theorem1, verify_theorem2, verify_theorem3, Samples,
};
use superext::superalg::{GradedLinearMap, SuperBasis};
use superext::Rat;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn diag(basis: &SuperBasis, xs: &[Rat]) -> GradedLinearMap<Rat> {
    let n = xs.len();
    GradedLinearMap::new(
        basis.clone(),
        basis.clone(),
        Matrix::from_fn(n, n, |r, c| if r == c { xs[r].clone() } else { q(0) }),
    )
    .unwrap()
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn corpus() -> Vec<(&'static str, AbelianExtension<Rat>)> {
    fixtures::corpus()
}

fn all_even_corpus() -> Vec<(&'static str, AbelianExtension<Rat>)> {
    corpus()
        .into_iter()
        .filter(|(_, e)| e.e().basis().is_all_even())
        .collect()
}

const SEED: u64 = 20240601;

fn criterion_1() -> Outcome {
    let ext = fixtures::h3_extension::<Rat>();
    let (_, h2_ce, z1_ce, _, _) = ce_dims(ext.module());
    let z1 = derivation_space(ext.module()).map_err(err)?;
    ensure(
        z1.dim() == 2 && z1_ce == 2,
        format!("dim Z1 = {}, oracle {z1_ce}", z1.dim()),
    )?;

    // ker(tilde_res) against the unipotent family x -> x + a z, y -> y + b z
    let end_ag = ext.end_ag_space().map_err(err)?;
    let family =
        Subspace::span(3, [vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]]).map_err(err)?;
    ensure(
        subspace_equal(&end_ag, &family).map_err(err)?,
        "End^{a,g} is not the unipotent family",
    )?;
    let z1_e = derivation_space(ext.e_module()).map_err(err)?;
    for v in z1_e.basis() {
        let f = ext
            .psi(&ext.derivation_from_coords(v).map_err(err)?)
            .map_err(err)?;
        ensure(
            ext.tilde_res(&f).map_err(err)?.matrix().is_zero(),
            "tilde_res nonzero on a derivation",
        )?;
    }

    let h2 = ext.h2().dim();
    ensure(
        h2 == 1 && h2_ce == 1,
        format!("dim H2 = {h2}, oracle {h2_ce}"),
    )?;

    let a = ext.module().space().clone();
    for c in [q(-3), q(-1), fr(1, 2), q(1), q(2), fr(7, 3)] {
        let phi = diag(&a, std::slice::from_ref(&c));
        let d = ext.connecting_d_aut(&phi).map_err(err)?;
        ensure(
            d == ext.beta_class().scale(&(q(1) - c.clone())),
            format!("d({c}·id) != (1-c)[β]"),
        )?;
        ensure(
            d.is_zero() == (c == q(1)),
            format!("d({c}·id) vanishing wrong"),
        )?;
        let extends = ext
            .extend_endomorphism(&diag(&a, &[c.clone() - q(1)]))
            .map_err(err)?
            .is_some();
        ensure(extends == (c == q(1)), format!("{c}·id extension wrong"))?;
    }
    Ok("dim Z1 = 2, End^{a,g} = unipotent family, dim H2 = 1, d(c·id) = (1-c)[β]".into())
}

fn five_term_on(list: &[(&'static str, AbelianExtension<Rat>)]) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    for (name, ext) in list {
        let r = verify_five_term(ext).map_err(err)?;
        ensure(r.pass, format!("{name}: {:?}", r.checks))?;
        out.push(name.to_string());
    }
    Ok(out)
}

fn criterion_2() -> Outcome {
    let names = five_term_on(&corpus())?;
    let ext = fixtures::h3_extension::<Rat>();
    let lam = ext
        .derivation_from_coords(&[q(0), q(0), q(-1)])
        .map_err(err)?;
    let inf = ext.inflation2(ext.beta()).map_err(err)?;
    ensure(
        delta1(&lam, ext.e_module()).map_err(err)? == inf,
        "δλ with λ(z) = -z does not equal inf2 β",
    )?;
    let dims = verify_five_term(&ext).map_err(err)?.dims;
    ensure(
        dims.z1_g == 2 && dims.z1_e == 2 && dims.img_res == 0 && dims.ker_d == 0 && dims.img_d == 1,
        format!("h3 dims {dims:?}"),
    )?;
    Ok(format!("exact on {}", names.join(", ")))
}

fn theorem1_on(list: &[(&'static str, AbelianExtension<Rat>)]) -> Result<String, String> {
    let mut pairs = 0;
    for (name, ext) in list {
        let r = verify_theorem1(ext, 100, SEED).map_err(err)?;
        ensure(r.pass, format!("{name}: {:?}", r.checks))?;
        pairs += r.pairs;
    }
    Ok(format!("{pairs} pairs over {} fixtures", list.len()))
}

fn criterion_3() -> Outcome {
    theorem1_on(&corpus())
}

fn oracle_on(list: &[(&'static str, AbelianExtension<Rat>)]) -> Result<String, String> {
    let mut tested = 0;
    let mut solvable = 0;
    for (name, ext) in list {
        let r = verify_extension_oracle(ext, 50, SEED).map_err(err)?;
        ensure(r.pass, format!("{name}: {} disagreements", r.disagreements))?;
        tested += r.tested;
        solvable += r.solvable;
    }
    Ok(format!(
        "{tested} maps, {solvable} extendable, no disagreement"
    ))
}

fn criterion_4() -> Outcome {
    oracle_on(&corpus())
}

fn criterion_5() -> Outcome {
    let ext = fixtures::h3_extension::<Rat>();
    let good = diag(ext.g().basis(), &[q(2), fr(1, 2)]);
    let gamma = ext
        .lift_endomorphism(&good)
        .map_err(err)?
        .ok_or("diag(2, 1/2) does not lift")?;
    let flags = ext.classify(&gamma).map_err(err)?;
    ensure(
        flags.homomorphism && flags.fixes_a_pointwise,
        "witness is not in End^a(e)",
    )?;
    ensure(ext.sigma(&gamma).map_err(err)? == good, "σ(witness) != ψ")?;
    ensure(
        gamma == diag(ext.e().basis(), &[q(2), fr(1, 2), q(1)]),
        "witness is not diag(2, 1/2, 1)",
    )?;
    let bad = diag(ext.g().basis(), &[q(2), q(1)]);
    ensure(
        ext.lift_endomorphism(&bad).map_err(err)?.is_none(),
        "diag(2, 1) lifts",
    )?;
    ensure(
        ext.chi(&bad).map_err(err)? == ext.beta_class(),
        "χ(diag(2, 1)) != [β]",
    )?;

    let all: Vec<(&str, AbelianExtension<Rat>)> = corpus()
        .into_iter()
        .chain([
            ("ab3", fixtures::ab3_extension::<Rat>()),
            ("odd-plane", fixtures::odd_plane_extension::<Rat>()),
        ])
        .collect();
    let mut notes = Vec::new();
    for (name, ext) in &all {
        let r = verify_theorem2(ext, &Samples::default(), 12, SEED).map_err(err)?;
        ensure(r.pass, format!("{name}: {:?}", r.checks))?;
        let unobstructed = ext.is_split() || ext.h2().dim() == 0;
        if unobstructed {
            ensure(
                r.samples.iter().all(|s| s.lifts),
                format!("{name}: a sampled ψ does not lift"),
            )?;
            notes.push(format!("{name} all {} lift", r.samples.len()));
        }
        if ext.is_central() {
            // every even endomorphism of g preserves the (trivial) action
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(SEED);
            for psi in end_a_g_candidates(ext, 8, &mut rng).map_err(err)? {
                ensure(
                    ext.is_action_preserving(&psi).map_err(err)?,
                    format!("{name}: End^a(g) != End(g)"),
                )?;
            }
            let n = ext.g().dim();
            let arbitrary = GradedLinearMap::new(
                ext.g().basis().clone(),
                ext.g().basis().clone(),
                Matrix::from_fn(n, n, |r, c| {
                    if ext.g().parity(r) == ext.g().parity(c) {
                        q((r * 3 + c) as i64 - 2)
                    } else {
                        q(0)
                    }
                }),
            )
            .map_err(err)?;
            if superext::superalg::is_homomorphism(&arbitrary, ext.g(), ext.g()).map_err(err)? {
                ensure(
                    ext.is_action_preserving(&arbitrary).map_err(err)?,
                    format!("{name}: End^a(g) != End(g)"),
                )?;
                let lifts = ext.lift_endomorphism(&arbitrary).map_err(err)?.is_some();
                ensure(
                    lifts == ext.chi(&arbitrary).map_err(err)?.is_zero(),
                    format!("{name}: lift not decided by χ"),
                )?;
            }
            ensure(
                r.samples.iter().all(|s| s.consistent),
                format!("{name}: lift not decided by χ"),
            )?;
            notes.push(format!("{name} central, decided by χ"));
        }
    }
    Ok(format!(
        "h3 diag(2,1/2) lifts, diag(2,1) obstructed by [β]; {}",
        notes.join("; ")
    ))
}

fn criterion_6() -> Outcome {
    let modules = [
        ("sd", fixtures::sd_module::<Rat>()),
        ("odd-plane", fixtures::odd_plane_module::<Rat>()),
        ("mixed", fixtures::mixed_module::<Rat>()),
    ];
    let sd_phi = fixtures::sd_extension::<Rat>();
    let two = diag(sd_phi.module().space(), &[q(2), q(2)]);
    let samples = Samples {
        a_maps: vec![two],
        g_maps: vec![],
    };
    let mut out = Vec::new();
    for (i, (name, m)) in modules.iter().enumerate() {
        let s = if i == 0 {
            samples.clone()
        } else {
            Samples::default()
        };
        let r = verify_theorem3(m, &s, 6, SEED).map_err(err)?;
        ensure(r.pass, format!("{name}: {:?}", r.checks))?;
        out.push(format!(
            "{name} ({}+{} factorizations)",
            r.factorizations_g_a, r.factorizations_a
        ));
    }
    Ok(out.join(", "))
}

fn criterion_7() -> Outcome {
    let ext = fixtures::ba1_extension::<Rat>();
    ensure(
        !ext.beta_class().is_zero(),
        "[β] = 0, so H would be a semidirect product",
    )?;
    let vals = [
        q(-2),
        fr(-1, 2),
        fr(1, 3),
        q(1),
        q(2),
        q(3),
        fr(1, 2),
        q(-1),
    ];
    let mut lifted = 0;
    for b in &vals {
        for c in &vals {
            let psi = diag(ext.g().basis(), &[b.clone(), c.clone()]);
            let bc = b.clone() * c.clone();
            let chi = ext.chi(&psi).map_err(err)?;
            ensure(
                chi == ext.beta_class().scale(&(bc.clone() - q(1))),
                format!("χ(diag({b}|{c})) != (bc-1)[β]"),
            )?;
            let lifts = ext.lift_endomorphism(&psi).map_err(err)?.is_some();
            ensure(
                lifts == (bc == q(1)),
                format!("diag({b}|{c}) lift decision wrong"),
            )?;
            lifted += lifts as usize;
        }
    }
    let report = verify_theorem2(&ext, &Samples::default(), 12, SEED).map_err(err)?;
    ensure(report.pass, format!("{:?}", report.checks))?;
    let flagged = report
        .discrepancies
        .iter()
        .any(|d| d.kind == "sigma-not-onto-automorphisms");
    ensure(
        flagged,
        "non-liftable automorphisms with bc != 0 not flagged",
    )?;
    Ok(format!(
        "lift iff bc = 1 ({lifted} of {} diagonal ψ), [β] != 0, bc != 0 discrepancy flagged",
        vals.len() * vals.len()
    ))
}

fn criterion_8() -> Outcome {
    let list = all_even_corpus();
    let names: Vec<&str> = list.iter().map(|(n, _)| *n).collect();
    for (name, ext) in &list {
        for module in [ext.module(), ext.e_module()] {
            let (h1, h2, z1, z2, b2) = ce_dims(module);
            let ours_z1 = derivation_space(module).map_err(err)?.dim();
            let ours_h2 = h2_even(module).map_err(err)?;
            let ours_h1 = superext::cohomology::h1_even(module).map_err(err)?.dim();
            ensure(
                (
                    ours_z1,
                    ours_h1,
                    ours_h2.ambient().dim(),
                    ours_h2.sub().dim(),
                    ours_h2.dim(),
                ) == (z1, h1, z2, b2, h2),
                format!("{name}: dims differ from the classical complex"),
            )?;
        }
        // Classical extension criterion: φ extends iff [φ∘β] = 0.
        let end = module_endomorphism_space(ext.module()).map_err(err)?;
        let d = ext.module().dim();
        for v in end.basis() {
            let phi = GradedLinearMap::new(
                ext.module().space().clone(),
                ext.module().space().clone(),
                Matrix::from_flat(d, d, v.clone()).map_err(err)?,
            )
            .map_err(err)?;
            let comp = ext.beta().compose_values(phi.matrix());
            let zero = class_of(&comp, ext.h2()).map_err(err)?.is_zero();
            ensure(
                zero == ext.extend_endomorphism(&phi).map_err(err)?.is_some(),
                format!("{name}: classical extension criterion fails"),
            )?;
        }
        let c1 = verify_corollary1(ext, &Samples::default(), 6, SEED).map_err(err)?;
        ensure(c1.pass, format!("{name}: {:?}", c1.checks))?;
    }
    five_term_on(&list)?;
    theorem1_on(&list)?;
    oracle_on(&list)?;
    criterion_1()?;
    Ok(format!(
        "criteria 1-4 and Lie algebra corollaries hold on {}",
        names.join(", ")
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("h3: Z1, End^{a,g}, H2 and d(c·id)", criterion_1),
        ("five-term exactness on the corpus", criterion_2),
        ("ring structure transported by Ψ", criterion_3),
        ("extension solver agrees with d = 0", criterion_4),
        ("lifting of endomorphisms of g", criterion_5),
        ("semidirect products: ε, α and factorization", criterion_6),
        (
            "ba1: lift iff bc = 1, non-split, discrepancy flagged",
            criterion_7,
        ),
        ("all-even corpus: classical degeneration", criterion_8),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS {}. {title}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {title}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
