//! The acceptance gate: one test per criterion, each printing a single
//! PASS line on success (visible with `--nocapture`; the per-test ok/FAILED
//! line carries the same information either way).

use argshift::centralizer::{degenerate_suite, eigenvalue_identity_check, verify_theorem1};
use argshift::chevalley::LieAlgebra;
use argshift::cli::{invariants_suite, pencil_suite};
use argshift::invariants::extract_generators;
use argshift::pbw::{check_quadratic_lift, Straightener};
use argshift::polyring::{psi_t, BracketPencil, Monomial, SparsePoly};
use argshift::rational::{q, qq, Q};
use argshift::root_system::RootSystem;
use argshift::shift::{build_q_mu, sample_regular_mu, ShiftFamily};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn lie(s: &str) -> LieAlgebra {
    LieAlgebra::build(RootSystem::build(s.parse().unwrap()).unwrap()).unwrap()
}

fn random_homogeneous<R: Rng>(rng: &mut R, dim: usize, degree: usize) -> SparsePoly {
    let mut p = SparsePoly::zero(dim);
    for _ in 0..4 {
        let mut exps = vec![0u16; dim];
        for _ in 0..degree {
            exps[rng.gen_range(0..dim)] += 1;
        }
        p.add_term(Monomial(exps), q(rng.gen_range(-4..=4)));
    }
    p
}

fn random_poly<R: Rng>(rng: &mut R, dim: usize, max_degree: usize) -> SparsePoly {
    let mut p = SparsePoly::zero(dim);
    for _ in 0..4 {
        let d = rng.gen_range(0..=max_degree);
        let mut exps = vec![0u16; dim];
        for _ in 0..d {
            exps[rng.gen_range(0..dim)] += 1;
        }
        p.add_term(Monomial(exps), q(rng.gen_range(-4..=4)));
    }
    p
}

#[test]
fn criterion_01_structure_soundness() {
    for s in ["A1", "A2", "A3", "B2", "C2", "G2"] {
        let g = lie(s);
        let dim = g.dim();
        let rank = g.rank();

        // Jacobi on every basis triple, via the structure constants.
        let bracket_vec = |x: &[Q], y: &[Q]| g.lie_bracket(x, y).unwrap();
        let unit = |i: usize| {
            let mut v = vec![Q::zero(); dim];
            v[i] = Q::one();
            v
        };
        for i in 0..dim {
            for j in (i + 1)..dim {
                for k in (j + 1)..dim {
                    let (x, y, z) = (unit(i), unit(j), unit(k));
                    let mut acc = bracket_vec(&bracket_vec(&x, &y), &z);
                    for (a, b) in acc
                        .iter_mut()
                        .zip(bracket_vec(&bracket_vec(&y, &z), &x))
                    {
                        *a += b;
                    }
                    for (a, b) in acc
                        .iter_mut()
                        .zip(bracket_vec(&bracket_vec(&z, &x), &y))
                    {
                        *a += b;
                    }
                    assert!(acc.iter().all(Q::is_zero), "{s}: Jacobi fails at ({i},{j},{k})");
                }
            }
        }

        // Invariance of the bilinear form on every ordered triple.
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let xy = bracket_vec(&unit(i), &unit(j));
                    let xz = bracket_vec(&unit(i), &unit(k));
                    let lhs = g.form_vectors(&xy, &unit(k)).unwrap();
                    let rhs = g.form_vectors(&unit(j), &xz).unwrap();
                    assert_eq!(lhs, -rhs, "{s}: form not invariant at ({i},{j},{k})");
                }
            }
        }

        // (e_alpha, e_{-alpha}) = 1 for every positive root.
        for (k, alpha) in g.root_system().positive_roots().iter().enumerate() {
            let pos = g.root_vector_index(alpha).unwrap();
            let neg = g.root_vector_index(&alpha.neg()).unwrap();
            assert_eq!(*g.form_pair(pos, neg), Q::one(), "{s}: pairing of root {k}");
        }

        // (h_alpha, h) = <alpha, h> where h_alpha = [e_alpha, e_{-alpha}].
        for alpha in g.root_system().positive_roots() {
            let pos = g.root_vector_index(alpha).unwrap();
            let neg = g.root_vector_index(&alpha.neg()).unwrap();
            let h_alpha = {
                let mut v = vec![Q::zero(); dim];
                for (t, c) in g.bracket_basis(pos, neg) {
                    v[*t] += c.clone();
                }
                v
            };
            for i in 0..rank {
                let mut h = vec![Q::zero(); dim];
                h[g.cartan_index(i)] = Q::one();
                let lhs = g.form_vectors(&h_alpha, &h).unwrap();
                let coords = argshift::root_system::CartanVector::from_ints(
                    &(0..rank).map(|j| i64::from(i == j)).collect::<Vec<_>>(),
                );
                let rhs = g.root_system().pairing(alpha, &coords).unwrap();
                assert_eq!(lhs, rhs, "{s}: duality fails for {alpha:?} against h_{i}");
            }
        }
    }
    println!("criterion 01 (structure soundness, A1/A2/A3/B2/C2/G2): PASS");
}

#[test]
fn criterion_02_pencil_jacobi_on_basis_triples() {
    for (s, triples) in [("A2", 56usize), ("B2", 120usize)] {
        let g = lie(s);
        let report = pencil_suite(&g, 7).unwrap();
        assert!(report.jacobi_ok, "{s}");
        assert_eq!(report.jacobi_triples_checked, 3 * triples, "{s}");
        assert_eq!(report.t_values, vec!["0", "1/2", "1"]);
    }
    println!("criterion 02 (pencil Jacobi at t in {{0, 1/2, 1}}, A2/B2): PASS");
}

#[test]
fn criterion_03_psi_t_isomorphism_and_q_mu_stability() {
    let g = lie("A2");
    let dim = g.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let ts = [qq(1, 2), q(-2), q(3)];
    let lie_bracket = BracketPencil::lie_poisson(&g);
    for _ in 0..100 {
        let f = random_poly(&mut rng, dim, 3);
        let h = random_poly(&mut rng, dim, 3);
        for t in &ts {
            let pencil = BracketPencil::new(&g, t.clone());
            let lhs = pencil
                .bracket(&psi_t(&g, &f, t).unwrap(), &psi_t(&g, &h, t).unwrap())
                .unwrap();
            let rhs = psi_t(&g, &lie_bracket.bracket(&f, &h).unwrap(), t).unwrap();
            assert_eq!(lhs, rhs, "intertwining fails at t = {t}");
        }
    }
    let mu = sample_regular_mu(g.root_system(), &mut rng).unwrap();
    let qs = build_q_mu(&g, &mu).unwrap();
    for t in &ts {
        let scale = Q::one() / (t * t);
        for q_el in &qs {
            assert_eq!(
                psi_t(&g, q_el, t).unwrap(),
                q_el.scale(&scale),
                "q does not rescale by t^-2 at t = {t}"
            );
        }
    }
    println!("criterion 03 (psi_t intertwiner on 100 pairs + Q_mu rescaling, A2): PASS");
}

#[test]
fn criterion_04_monomial_eigenvalue_identity() {
    let g = lie("A2");
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut total = 0;
    for _ in 0..20 {
        let mu = sample_regular_mu(g.root_system(), &mut rng).unwrap();
        let h = sample_regular_mu(g.root_system(), &mut rng).unwrap();
        total += eigenvalue_identity_check(&g, &mu, &h, 3).unwrap();
    }
    // deg 1 + deg 2 + deg 3 monomials in 8 variables, 20 samples each.
    assert_eq!(total, 20 * (8 + 36 + 120));
    println!("criterion 04 (frozen-bracket eigenvalue identity, deg <= 3, 20 samples, A2): PASS");
}

#[test]
fn criterion_05_degenerate_centralizer_counts() {
    for (s, nmax) in [("A1", 4usize), ("A2", 3usize)] {
        let report = degenerate_suite(&lie(s), nmax, 7, 5).unwrap();
        assert!(report.passed(), "{s}");
        for row in &report.degrees {
            assert_eq!(row.dim_centralizer, row.balanced_count, "{s} degree {}", row.n);
            assert_eq!(row.unbalanced_zero_eigenvalues, 0, "{s} degree {}", row.n);
        }
    }
    println!("criterion 05 (t = 0 centralizer = balanced monomials, A1 n<=4 / A2 n<=3): PASS");
}

#[test]
fn criterion_06_family_commutativity() {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    for s in ["A1", "A2", "B2"] {
        let g = lie(s);
        let top = *argshift::invariants::generator_degrees(g.label())
            .unwrap()
            .last()
            .unwrap();
        let inv = extract_generators(&g, top).unwrap();
        for _ in 0..3 {
            let mu = sample_regular_mu(g.root_system(), &mut rng).unwrap();
            let family = ShiftFamily::new(&g, &inv, mu).unwrap();
            assert_eq!(
                family.generators().len(),
                (g.dim() + g.rank()) / 2,
                "{s}: generator count"
            );
            family.verify_commutative().unwrap();
        }
    }
    println!("criterion 06 (pairwise Poisson commutativity, A1/A2/B2, 3 directions each): PASS");
}

#[test]
fn criterion_07_centralizer_equality_by_degree() {
    let expectations = [
        ("A1", 4usize, vec![1usize, 2, 2, 3]),
        ("A2", 3, vec![2, 5, 9]),
        ("B2", 3, vec![2, 5, 9]),
    ];
    for (s, nmax, dims) in expectations {
        let g = lie(s);
        let top = *argshift::invariants::generator_degrees(g.label())
            .unwrap()
            .last()
            .unwrap();
        let inv = extract_generators(&g, top).unwrap();
        let report = verify_theorem1(&g, &inv, nmax, 7, 5, false).unwrap();
        assert!(report.passed(), "{s}");
        assert!(report.resamples <= 5, "{s}");
        let got: Vec<usize> = report.degrees.iter().map(|r| r.dim_a_mu).collect();
        assert_eq!(got, dims, "{s}: family dimensions");
        for row in &report.degrees {
            assert!(row.containment, "{s} degree {}", row.n);
            assert_eq!(row.dim_centralizer, row.dim_a_mu, "{s} degree {}", row.n);
        }
    }
    println!("criterion 07 (A_mu = centralizer(Q_mu) degreewise, A1/A2/B2): PASS");
}

#[test]
fn criterion_08_invariant_dimension_ladder() {
    let table = [
        ("A1", 6usize, vec![2usize]),
        ("A2", 6, vec![2, 3]),
        ("B2", 4, vec![2, 4]),
    ];
    for (s, nmax, degrees) in table {
        let g = lie(s);
        let report = invariants_suite(&g, nmax).unwrap();
        assert!(report.passed(), "{s}");
        let set = extract_generators(&g, *degrees.last().unwrap()).unwrap();
        assert_eq!(set.degrees, degrees, "{s}");
    }
    println!("criterion 08 (invariant dims match the free series; degrees {{2}}/{{2,3}}/{{2,4}}): PASS");
}

#[test]
fn criterion_09_pbw_layer() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for s in ["A1", "A2"] {
        let g = lie(s);
        let mut straightener = Straightener::new(&g);
        let pencil = BracketPencil::lie_poisson(&g);
        let mut checked = 0;
        while checked < 50 {
            let d = rng.gen_range(1..=4);
            let p = random_homogeneous(&mut rng, g.dim(), d);
            if p.is_zero() {
                continue;
            }
            assert_eq!(straightener.symmetrize(&p).unwrap().gr(), p, "{s}");
            checked += 1;
        }
        for _ in 0..10 {
            let da = rng.gen_range(1..=2);
            let db = rng.gen_range(1..=2);
            let f = random_homogeneous(&mut rng, g.dim(), da);
            let h = random_homogeneous(&mut rng, g.dim(), db);
            if f.is_zero() || h.is_zero() {
                continue;
            }
            let sf = straightener.symmetrize(&f).unwrap();
            let sh = straightener.symmetrize(&h).unwrap();
            let c = straightener.commutator(&sf, &sh).unwrap();
            assert_eq!(
                c.degree_part(da + db - 1),
                pencil.bracket(&f, &h).unwrap(),
                "{s}"
            );
        }

        let top = *argshift::invariants::generator_degrees(g.label())
            .unwrap()
            .last()
            .unwrap();
        let inv = extract_generators(&g, top).unwrap();
        let mu = sample_regular_mu(g.root_system(), &mut rng).unwrap();
        let family = ShiftFamily::new(&g, &inv, mu).unwrap();
        let slice = family.quadratic_slice().unwrap();
        let lift = check_quadratic_lift(&g, &slice).unwrap();
        assert!(lift.all_commute, "{s}: witnesses {:?}", lift.witnesses);
        let expected_pairs = slice.dim() * (slice.dim() - 1) / 2;
        assert_eq!(lift.pairs_checked, expected_pairs, "{s}");
        if s == "A2" {
            assert_eq!(slice.dim(), 8);
            assert_eq!(lift.pairs_checked, 28);
        }
    }
    println!("criterion 09 (gr∘symmetrize = id on 100 polys; gr[,)] = bracket; slice lifts commute): PASS");
}

#[test]
fn criterion_10_byte_identical_reports() {
    let exe = env!("CARGO_BIN_EXE_argshift");
    let run = |target: &std::path::Path| {
        let output = std::process::Command::new(exe)
            .args([
                "verify",
                "all",
                "--type",
                "A2",
                "--seed",
                "7",
                "--out",
            ])
            .arg(target)
            .output()
            .expect("binary runs");
        assert!(output.status.success(), "verify all failed: {output:?}");
        std::fs::read(target).expect("report written")
    };
    let dir = std::env::temp_dir();
    let first = dir.join("argshift-acceptance-run1.jsonl");
    let second = dir.join("argshift-acceptance-run2.jsonl");
    let a = run(&first);
    let b = run(&second);
    let _ = std::fs::remove_file(&first);
    let _ = std::fs::remove_file(&second);
    assert!(!a.is_empty());
    assert_eq!(a, b, "reports differ between runs");
    println!("criterion 10 (verify all --type A2 --seed 7 twice, byte-identical): PASS");
}
