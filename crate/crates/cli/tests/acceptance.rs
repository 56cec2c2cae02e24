//! Acceptance suite: one test per criterion, each printing a pass line
//! with the measured quantity. Every tolerance is pinned here.
//!
//! Run with `cargo test -p liegeo-cli --test acceptance -- --nocapture`
//! to see the per-criterion lines.

use liegeo::affine::Connection;
use liegeo::algebra::LieAlgebra;
use liegeo::catalog;
use liegeo::complexstruct::{check_complex_structure, rmap_complex_structure};
use liegeo::contact::{
    check_lcs, check_semicontact, check_semisasakian, lcs_of_semicontact,
    lcs_of_semicontact_unchecked, split_lcs, SemiContactData,
};
use liegeo::forms::AltForm;
use liegeo::hessian::{
    codazzi_report, kahler_form, semisasakian_from_projective_hessian, ProjectiveHessianData,
};
use liegeo::invariants::structure_invariants;
use liegeo::matrix::{basis_vector, BilinearForm, Matrix};
use liegeo::numcone::{
    check_cone_scaling, check_invariance, congruence_coordinate_map, num_hessian, rel_err,
    scaling_readings, tube_kahler, ConePoint, PotentialKind, PotentialSpec, SplitMix64,
    DEFAULT_STEP, SCALING_STEP,
};
use liegeo::scalar::{int, rat, Rat};
use num_traits::Zero;
use std::path::PathBuf;
use std::time::{Duration, Instant};

fn random_rat(rng: &mut SplitMix64) -> Rat {
    let num = (rng.next_u64() % 19) as i64 - 9;
    let den = (rng.next_u64() % 5) as i64 + 1;
    rat(num, den)
}

fn random_form(rng: &mut SplitMix64, dim: usize, degree: usize) -> AltForm<Rat> {
    let mut f = AltForm::zero(dim, degree);
    for _ in 0..6 {
        let mut idx: Vec<usize> = Vec::with_capacity(degree);
        for _ in 0..degree {
            idx.push((rng.next_u64() % dim as u64) as usize);
        }
        f.add_term(&idx, random_rat(rng));
    }
    f
}

fn catalog_connections() -> Vec<(String, LieAlgebra<Rat>, Connection<Rat>)> {
    catalog::names()
        .iter()
        .filter_map(|n| {
            let b = catalog::load_example(n).unwrap();
            b.connection.map(|c| (b.name, b.algebra, c))
        })
        .collect()
}

fn cone_input(name: &str) -> ProjectiveHessianData<Rat> {
    let b = catalog::load_example(name).unwrap();
    ProjectiveHessianData::from_hat(
        b.algebra.clone(),
        b.connection.clone().unwrap(),
        b.metrics.get("g_G").unwrap().clone(),
    )
    .unwrap()
}

#[test]
fn criterion_01_differential_squares_to_zero() {
    let started = Instant::now();
    let mut rng = SplitMix64::new(101);
    let mut checked = 0usize;
    for name in catalog::names() {
        let algebra = catalog::load_example(name).unwrap().algebra;
        let n = algebra.dim();
        for degree in 0..n.saturating_sub(1) {
            for _ in 0..200 {
                let f = random_form(&mut rng, n, degree);
                let dd = f.ce_d(&algebra).unwrap().ce_d(&algebra).unwrap();
                assert!(dd.is_zero(), "d² ≠ 0 on {} at degree {}", name, degree);
                checked += 1;
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {:?}", elapsed);
    println!(
        "criterion 01 pass: d∘d = 0 exactly on {} random forms across the catalog ({:?})",
        checked, elapsed
    );
}

#[test]
fn criterion_02_tangent_complex_structures_integrable() {
    let started = Instant::now();
    let mut count = 0;
    for (name, algebra, conn) in catalog_connections() {
        let (tangent, j) = rmap_complex_structure(&algebra, &conn).unwrap();
        let report = check_complex_structure(&tangent, j.matrix()).unwrap();
        assert!(report.pass(), "{}: {:?}", name, report.violations);
        count += 1;
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {:?}", elapsed);
    println!(
        "criterion 02 pass: exactly vanishing Nijenhuis tensor of the tangent complex structure on {} catalog tables ({:?})",
        count, elapsed
    );
}

#[test]
fn criterion_03_codazzi_matches_closedness() {
    let started = Instant::now();
    let mut rng = SplitMix64::new(303);
    let mut agreements = 0usize;
    let mut failures_seen = 0usize;
    for (name, algebra, conn) in catalog_connections() {
        let n = algebra.dim();
        let bundle = catalog::load_example(&name).unwrap();
        let base = bundle
            .metrics
            .get("g")
            .cloned()
            .unwrap_or_else(|| BilinearForm::identity(n));
        let mut metrics: Vec<BilinearForm<Rat>> = vec![base.clone(), BilinearForm::identity(n)];
        // random symmetric rational perturbations of the base metric
        while metrics.len() < 52 {
            let mut m = base.matrix().clone();
            for r in 0..n {
                for c in r..n {
                    let v = m.get(r, c).clone() + random_rat(&mut rng);
                    m.set(r, c, v.clone());
                    m.set(c, r, v);
                }
            }
            metrics.push(BilinearForm::symmetric(m).unwrap());
        }
        let parts: Vec<Matrix<Rat>> = (0..n).map(|i| conn.nabla_basis(i)).collect();
        let tangent = algebra.semidirect_abelian(&parts).unwrap();
        for g in &metrics {
            let codazzi = codazzi_report(&conn, g).pass();
            let omega = kahler_form(g);
            let closed =
                omega.degree() >= tangent.dim() || omega.ce_d(&tangent).unwrap().is_zero();
            assert_eq!(codazzi, closed, "{} disagrees", name);
            agreements += 1;
            if !codazzi {
                failures_seen += 1;
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {:?}", elapsed);
    assert!(failures_seen > 50, "perturbations were not generic enough");
    println!(
        "criterion 03 pass: Codazzi ⇔ closed tangent form agreed on {} metrics ({} generic failures) ({:?})",
        agreements, failures_seen, elapsed
    );
}

#[test]
fn criterion_04_extension_round_trip() {
    let h3 = catalog::load_example("h3").unwrap();
    let mut passing: Vec<SemiContactData<Rat>> = vec![catalog::semicontact_of(&h3).unwrap()];
    for name in ["complex_lsa", "quaternion_lsa"] {
        passing.push(semisasakian_from_projective_hessian(&cone_input(name)).unwrap().data);
    }
    for (i, data) in passing.iter().enumerate() {
        assert!(check_semicontact(data).unwrap().pass(), "entry {}", i);
        let lcs = lcs_of_semicontact(data).unwrap();
        assert!(check_lcs(&lcs).unwrap().pass(), "entry {}", i);
        let n1 = lcs.algebra.dim();
        let back = split_lcs(&lcs, &basis_vector::<Rat>(n1, n1 - 1)).unwrap();
        assert_eq!(&back, data, "round trip is not the identity on entry {}", i);
    }
    let h = h3.algebra.clone();
    let eta = AltForm::basis_covector(3, 2);
    let omega = eta.ce_d(&h).unwrap();
    let failing = vec![
        SemiContactData::new(h.clone(), Matrix::zeros(3, 3), omega.neg(), eta.clone()).unwrap(),
        SemiContactData::new(h.clone(), Matrix::zeros(3, 3), omega, AltForm::basis_covector(3, 0))
            .unwrap(),
        SemiContactData::new(
            LieAlgebra::abelian(3),
            Matrix::identity(3),
            AltForm::from_terms(3, 2, &[(&[0, 1][..], int(1))]),
            AltForm::basis_covector(3, 2),
        )
        .unwrap(),
    ];
    for (i, data) in failing.iter().enumerate() {
        assert!(!check_semicontact(data).unwrap().pass(), "failing entry {} passed", i);
        let lcs = lcs_of_semicontact_unchecked(data).unwrap();
        assert!(!check_lcs(&lcs).unwrap().pass(), "lcs of failing entry {} passed", i);
    }
    println!(
        "criterion 04 pass: semi-contact ⇔ lcs equivalence on {} passing and {} failing collections, with exact split round trips",
        passing.len(),
        failing.len()
    );
}

#[test]
fn criterion_05_pipeline_euclidean_cover() {
    let started = Instant::now();
    let bundle = semisasakian_from_projective_hessian(&cone_input("complex_lsa")).unwrap();
    assert_eq!(bundle.data.algebra.dim(), 3);
    // explicit isomorphism onto the euclidean-motions brackets
    let p = Matrix::from_rows(vec![
        vec![int(-1), int(0), int(0)],
        vec![int(0), int(1), int(0)],
        vec![int(0), int(0), int(1)],
    ]);
    let moved = bundle.data.algebra.transport(&p).unwrap();
    let e2 = catalog::load_example("e2").unwrap().algebra;
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(moved.bracket_basis(i, j), e2.bracket_basis(i, j));
        }
    }
    assert!(check_semisasakian(&bundle.data, &bundle.j_ext).unwrap().pass());
    assert!(bundle.g_ext.is_positive_definite());
    assert!(bundle.tangent_metric.is_positive_definite());
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {:?}", elapsed);
    println!(
        "criterion 05 pass: complex input gives the euclidean-cover semi-contact algebra with verified data and Sylvester-positive metric ({:?})",
        elapsed
    );
}

#[test]
fn criterion_06_pipeline_quaternion_case() {
    let started = Instant::now();
    let bundle = semisasakian_from_projective_hessian(&cone_input("quaternion_lsa")).unwrap();
    let m = &bundle.data.algebra;
    assert_eq!(m.dim(), 7);
    // su(2) brackets after halving the imaginary units
    let mut p = Matrix::<Rat>::identity(7);
    for i in 0..3 {
        p.set(i, i, rat(1, 2));
    }
    let moved = m.transport(&p).unwrap();
    assert_eq!(moved.bracket_basis(0, 1), basis_vector::<Rat>(7, 2));
    assert_eq!(moved.bracket_basis(1, 2), basis_vector::<Rat>(7, 0));
    assert_eq!(moved.bracket_basis(2, 0), basis_vector::<Rat>(7, 1));
    // the translation block stays abelian
    for a in 3..7 {
        for b in a + 1..7 {
            assert!(liegeo::matrix::vec_is_zero(&m.bracket_basis(a, b)));
        }
    }
    assert!(check_semisasakian(&bundle.data, &bundle.j_ext).unwrap().pass());
    assert!(bundle.g_ext.is_positive_definite());
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {:?}", elapsed);
    println!(
        "criterion 06 pass: quaternion input gives su(2) ⋉ ℝ⁴ semi-contact data passing the full check ({:?})",
        elapsed
    );
}

#[test]
fn criterion_07_classification_invariants() {
    let su2 = structure_invariants(&catalog::load_example("su2").unwrap().algebra).unwrap();
    let sl2 = structure_invariants(&catalog::load_example("sl2").unwrap().algebra).unwrap();
    let h3 = structure_invariants(&catalog::load_example("h3").unwrap().algebra).unwrap();
    let aff_r_line = catalog::load_example("affR").unwrap().algebra.direct_sum(&LieAlgebra::abelian(1));
    let affr = structure_invariants(&aff_r_line).unwrap();
    let e2 = structure_invariants(&catalog::load_example("e2").unwrap().algebra).unwrap();

    assert!(su2.semisimple && sl2.semisimple);
    assert_eq!(su2.killing_signature, (0, 3, 0));
    assert_eq!(sl2.killing_signature, (2, 1, 0));
    assert!(h3.nilpotent);
    assert!(affr.solvable && !affr.nilpotent && !affr.unimodular);
    assert!(e2.solvable && !e2.nilpotent && e2.unimodular && !e2.semisimple);
    // e2 differs from each of the four reference algebras
    assert!(!e2.semisimple && su2.semisimple);
    assert!(!e2.semisimple && sl2.semisimple);
    assert!(!e2.nilpotent && h3.nilpotent);
    assert!(e2.unimodular && !affr.unimodular);
    println!(
        "criterion 07 pass: computed invariants separate the euclidean-motions algebra from all four reference entries"
    );
}

#[test]
fn criterion_08_congruence_invariance_and_bridge() {
    let started = Instant::now();
    let spec = PotentialSpec::new(PotentialKind::LogChar, 2);
    let report = check_invariance(&spec, 10, 8, DEFAULT_STEP, 1e-6).unwrap();
    assert!(report.pass(), "max rel err {}", report.max_rel_err);

    // bridge to the exact catalog metric: pull the numeric Hessian at the
    // unit back through the orbit-map coordinates ρ(a1) = 2E11,
    // ρ(a2) = E12 + E21, ρ(a3) = 2E22
    let h = num_hessian(&spec, &ConePoint::identity(2), DEFAULT_STEP).unwrap();
    let r = Matrix::from_rows(vec![
        vec![2.0, 0.0, 0.0],
        vec![0.0, 1.0, 0.0],
        vec![0.0, 0.0, 2.0],
    ]);
    let pulled = r.transpose().matmul(&h).matmul(&r);
    let t2 = catalog::load_example("t2cone").unwrap();
    let exact = t2.metrics.get("g").unwrap().matrix();
    let exact_f = Matrix::from_fn(3, 3, |a, b| liegeo::scalar::rat_to_f64(exact.get(a, b)));
    let bridge_err = rel_err(&pulled, &exact_f);
    assert!(bridge_err < 1e-6, "bridge error {}", bridge_err);
    // the congruence map at the identity is the identity map on coordinates
    let id_map = congruence_coordinate_map(&Matrix::identity(2));
    assert_eq!(id_map, Matrix::identity(3));
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {:?}", elapsed);
    println!(
        "criterion 08 pass: congruence invariance max rel err {:.3e} ≤ 1e-6 over 10 seeded samples; unit value matches the exact triangular-cone metric within {:.3e} ({:?})",
        report.max_rel_err, bridge_err, elapsed
    );
}

#[test]
fn criterion_09_conical_scaling_readings() {
    let mut worst: f64 = 0.0;
    for n in [1usize, 2] {
        let spec = PotentialSpec::new(PotentialKind::ConePower, n);
        for q in [0.5, 2.0, 10.0] {
            let report = check_cone_scaling(&spec, q, 10, 5, SCALING_STEP, 1e-8).unwrap();
            assert!(report.pass(), "n = {}, q = {}: {}", n, q, report.max_rel_err);
            worst = worst.max(report.max_rel_err);
        }
        let readings = scaling_readings(n, 2.0, 10, 5, SCALING_STEP).unwrap();
        assert_eq!(readings.conical_kinds(1e-8), vec![PotentialKind::ConePower]);
        assert_eq!(readings.invariant_kinds(1e-6), vec![PotentialKind::LogChar]);
    }
    println!(
        "criterion 09 pass: degree-0 homogeneity of the cone-power Hessian within {:.3e} ≤ 1e-8 for q ∈ {{0.5, 2, 10}}, n ∈ {{1, 2}}; the q²-conical reading holds for cone_power only, log_char is dilation-invariant, char is neither",
        worst
    );
}

#[test]
fn criterion_10_tube_domain_hessian() {
    let mut worst: f64 = 0.0;
    for n in [1usize, 2] {
        let spec = PotentialSpec::new(PotentialKind::LogChar, n);
        let mut rng = SplitMix64::new(12);
        for _ in 0..5 {
            let y = ConePoint::sample(n, &mut rng);
            let tube = tube_kahler(&spec, &y, DEFAULT_STEP).unwrap();
            let real = num_hessian(&spec, &y, DEFAULT_STEP).unwrap();
            let err = rel_err(&tube.matrix, &real);
            assert!(err < 1e-6, "n = {}: {}", n, err);
            assert!(tube.positive_definite);
            assert_eq!(tube.max_imag, 0.0);
            worst = worst.max(err);
        }
    }
    println!(
        "criterion 10 pass: tube-domain complex Hessian equals the real Hessian within {:.3e} ≤ 1e-6 and is positive definite at all samples",
        worst
    );
}

#[test]
fn criterion_11_cli_golden_flows() {
    let bin = env!("CARGO_BIN_EXE_liegeo");
    let run = |args: &[&str]| -> (i32, String) {
        let out = std::process::Command::new(bin).args(args).output().expect("binary runs");
        (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
    };
    let goldens = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("goldens");

    // export/parse round trip, byte-identical, across the whole catalog
    for name in catalog::names() {
        let (code, stdout) = run(&["catalog", "export", name]);
        assert_eq!(code, 0);
        let golden =
            std::fs::read_to_string(goldens.join(format!("{}.bundle.json", name))).unwrap();
        assert_eq!(stdout, golden, "{} drifted", name);
    }

    // documented invocation 1: validate a catalog export of h3 → exit 0
    let h3 = goldens.join("h3.bundle.json");
    let (code, _) = run(&["validate", h3.to_str().unwrap()]);
    assert_eq!(code, 0);

    // documented invocation 2: the pipeline on the complex bundle → exit 0,
    // and the emitted bundle passes the semi-Sasakian check → exit 0
    let tmp = std::env::temp_dir().join("liegeo_acceptance_pipeline.bundle.json");
    let complex = goldens.join("complex_lsa.bundle.json");
    let (code, _) = run(&[
        "construct",
        "semisasakian-pipeline",
        complex.to_str().unwrap(),
        "-o",
        tmp.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let (code, _) = run(&["check", "semisasakian", tmp.to_str().unwrap()]);
    assert_eq!(code, 0);
    std::fs::remove_file(&tmp).ok();

    // documented invocation 3: the lcs counterexample → exit 1 with the
    // witness tuple (1,3,4)
    let counter = goldens.join("abelian4_lcs_fail.bundle.json");
    let (code, stdout) = run(&["check", "lcs", counter.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stdout.contains("(1,3,4)"), "missing witness in: {}", stdout);

    println!(
        "criterion 11 pass: byte-identical catalog exports and the three documented invocations exit with 0, 0, 1"
    );
}
