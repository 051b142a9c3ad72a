//! Identity suite over random gems generated by dipole insertions from
//! the order-2 graph. Every relation here is an exact integer identity.

use gemkit::gem::Color;
use gemkit::generator::{random_crystallization, random_gem, Rng64};
use gemkit::genus::{
    canonical_p4, check_rho_difference, euler_char, genus_profile, genus_sum, regular_genus,
    CyclicPermutation, ManifoldContext,
};
use gemkit::moves::{eliminate_dipole, find_dipoles, two_dipole_genus_drop};
use gemkit::trisection::{quasi_trisection, TrisectOptions};

fn ctx0() -> ManifoldContext {
    ManifoldContext::new(0, 0).unwrap()
}

#[test]
fn regular_genus_euler_relation_on_random_gems() {
    // The defining relation is checked internally (integrality and
    // non-negativity of every component genus); here we pin invariance
    // under rotation and inversion on top.
    for seed in 1..30u64 {
        let g = random_gem(seed, 5);
        let eps = CyclicPermutation::from_indices(&[3, 0, 4, 1, 2]);
        let rho = regular_genus(&g, &eps).unwrap();
        for rot in eps.rotations() {
            assert_eq!(regular_genus(&g, &rot).unwrap(), rho);
            assert_eq!(regular_genus(&g, &rot.reversed()).unwrap(), rho);
        }
    }
}

#[test]
fn residue_relation_and_defects_on_random_gems() {
    // genus_profile hard-errors on any Eq-(1) mismatch or negative defect.
    for seed in 1..40u64 {
        let g = random_gem(seed ^ 0xabcd, 6);
        for eps in canonical_p4() {
            let prof = genus_profile(&g, &eps, &ctx0()).unwrap();
            assert!(prof.rho >= 0);
        }
    }
}

#[test]
fn chi_routes_agree_and_equal_two_on_sphere_gems() {
    for seed in 1..40u64 {
        let g = random_gem(seed.wrapping_mul(7919), 6);
        let eps = canonical_p4().remove(0);
        assert_eq!(euler_char(&g, &eps).unwrap(), 2, "seed {}", seed);
    }
}

#[test]
fn rho_difference_identities_on_random_crystallizations() {
    for seed in 1..40u64 {
        let g = random_crystallization(seed.wrapping_mul(31), 6);
        for eps in canonical_p4() {
            let rep = check_rho_difference(&g, &eps, &ctx0(), true).unwrap();
            assert!(rep.rho_prime - rep.rho <= rep.q);
        }
    }
}

#[test]
fn euler_lemma_on_random_crystallizations() {
    let opts = TrisectOptions {
        budget: 50_000,
        assume_ordinary: true,
    };
    for seed in 1..25u64 {
        let g = random_crystallization(seed.wrapping_mul(101), 5);
        for eps in canonical_p4().into_iter().take(3) {
            let rep = quasi_trisection(&g, &eps, &opts).unwrap();
            assert_eq!(rep.chi, 2 + rep.genus_central - rep.genus_h1 - rep.genus_h2);
        }
    }
}

#[test]
fn two_dipole_elimination_genus_rule() {
    // Eliminating a proper 2-dipole leaves ρ_ε unchanged when its colors
    // are ε-consecutive and drops it by exactly one otherwise.
    let eps = CyclicPermutation::from_indices(&[0, 1, 2, 3, 4]);
    let mut checked = 0;
    for seed in 1..60u64 {
        let g = random_crystallization(seed.wrapping_mul(17) + 3, 6);
        let rho = regular_genus(&g, &eps).unwrap();
        for d in find_dipoles(&g) {
            if d.order() != 2 {
                continue;
            }
            let smaller = eliminate_dipole(&g, &d).unwrap();
            let rho_after = regular_genus(&smaller, &eps).unwrap();
            let drop = two_dipole_genus_drop(&eps, &d.colors);
            assert_eq!(rho - rho_after, drop, "dipole {:?}", d);
            checked += 1;
        }
    }
    assert!(checked > 20, "exercised only {} two-dipoles", checked);
}

#[test]
fn residue_monotonicity_under_color_enlargement() {
    let mut rng = Rng64::new(99);
    for seed in 1..20u64 {
        let g = random_gem(seed + 500, 5);
        let mut colors: Vec<Color> = Vec::new();
        let mut pool: Vec<u8> = (0..5).collect();
        let mut prev = g.residue_count(&colors);
        while !pool.is_empty() {
            let c = pool.remove(rng.below(pool.len()));
            colors.push(Color(c));
            let next = g.residue_count(&colors);
            assert!(next <= prev);
            prev = next;
        }
    }
}

#[test]
fn connected_sum_genus_additivity() {
    let eps = CyclicPermutation::from_indices(&[1, 3, 0, 2, 4]);
    for seed in 1..10u64 {
        let g1 = random_crystallization(seed * 2 + 1, 4);
        let g2 = random_crystallization(seed * 5 + 2, 4);
        let rho1 = regular_genus(&g1, &eps).unwrap();
        let rho2 = regular_genus(&g2, &eps).unwrap();
        let sum = gemkit::moves::graph_connected_sum(&g1, 0, &g2, 1).unwrap();
        assert_eq!(regular_genus(&sum, &eps).unwrap(), rho1 + rho2);
        // Residue counts: g_S(Γ₁#Γ₂) = g_S(Γ₁) + g_S(Γ₂) − 1 for proper
        // non-empty color subsets.
        for s in [
            vec![Color(0)],
            vec![Color(0), Color(3)],
            vec![Color(1), Color(2), Color(4)],
            vec![Color(0), Color(1), Color(2), Color(3)],
        ] {
            assert_eq!(
                sum.residue_count(&s),
                g1.residue_count(&s) + g2.residue_count(&s) - 1
            );
        }
    }
}

#[test]
fn hat4_genus_preserved_by_normalization() {
    // Insert a color-4 1-dipole (making g_4̂ = 2), normalize back, and
    // check the summed hat-4 genus is unchanged.
    for seed in 1..20u64 {
        let g = random_crystallization(seed + 7000, 5);
        let eps = CyclicPermutation::from_indices(&[0, 1, 2, 3, 4]);
        let base = gemkit::moves::hat4_genus_sum(&g, &eps).unwrap();
        let sites: Vec<(u32, u32)> = (0..4u8)
            .map(|c| {
                let v = (seed as u32 * 3) % g.order() as u32;
                (v, g.partner(v, Color(c)))
            })
            .collect();
        let Ok((bigger, _)) = gemkit::moves::add_dipole(&g, &[Color(4)], &sites) else {
            continue;
        };
        assert_eq!(bigger.residue_count_hat(Color(4)), 2);
        assert_eq!(gemkit::moves::hat4_genus_sum(&bigger, &eps).unwrap(), base);
        let (normalized, trace) = gemkit::moves::normalize_to_gs4(&bigger).unwrap();
        assert_eq!(normalized.residue_count_hat(Color(4)), 1);
        assert!(!trace.is_empty());
        assert_eq!(gemkit::moves::hat4_genus_sum(&normalized, &eps).unwrap(), base);
    }
}

#[test]
fn spine_and_presentation_routes_agree_on_random_crystallizations() {
    let ctx = ctx0();
    let opts = TrisectOptions {
        budget: 100_000,
        assume_ordinary: true,
    };
    for seed in 1..25u64 {
        let g = random_crystallization(seed.wrapping_mul(13) + 1, 5);
        for eps in canonical_p4().into_iter().take(2) {
            let rep = gemkit::trisection::verdict(&g, &eps, &ctx, &opts).unwrap();
            assert!(rep.checks.routes_agree, "seed {} eps {}", seed, eps);
        }
    }
}

#[test]
fn sum_of_hat_genera_identity() {
    // Eq (3): Σ_i ρ_{ε_î} = (5/2)(ρ_ε − m) + (m−m') − ½ Σ_i t_skip.
    for seed in 1..30u64 {
        let g = random_crystallization(seed.wrapping_mul(97) + 5, 6);
        for eps in canonical_p4().into_iter().take(4) {
            let prof = genus_profile(&g, &eps, &ctx0()).unwrap();
            let sum: i64 = prof.rho_hat.iter().sum();
            let mut t_skip = 0i64;
            for i in 0..5isize {
                t_skip += prof.defect([eps.at(i).0, eps.at(i + 2).0, eps.at(i + 4).0]);
            }
            assert_eq!(2 * sum, 5 * prof.rho - t_skip, "seed {} eps {}", seed, eps);
        }
    }
}

#[test]
fn genus_sum_matches_component_extraction() {
    // Summed residue genus equals the sum of regular genera of the
    // extracted standalone components.
    for seed in 1..15u64 {
        let g = random_gem(seed + 1234, 5);
        let order = [Color(0), Color(1), Color(2), Color(3)];
        let total = genus_sum(&g, &order).unwrap();
        let res = g.residues(&order);
        let mut by_parts = 0;
        for comp in &res.components {
            let sub = gemkit::moves::extract_residue(&g, &order, comp);
            let eps = CyclicPermutation::from_indices(&[0, 1, 2, 3]);
            by_parts += regular_genus(&sub, &eps).unwrap();
        }
        assert_eq!(total, by_parts);
    }
}

#[test]
fn lens_space_residue_is_certified_non_sphere() {
    // Independent oracle: H₁(L(2,1)) = Z/2 from the linking matrix (the
    // 2-framed unknot), frozen against the bundled genus-1 gem.
    let path = format!("{}/../../fixtures/l21.gem", env!("CARGO_MANIFEST_DIR"));
    let g = gemkit::parse_gem(&std::fs::read_to_string(path).unwrap()).unwrap();
    let pres = gemkit::pi1::presentation(&g, Color(3)).unwrap();
    assert_eq!(gemkit::pi1::abelianization(&pres), (0, vec![2]));
    let v = gemkit::moves::sphere_reduce(&g, 50_000);
    assert_eq!(v.value, gemkit::moves::SphereValue::NotSphere);
    let eps = CyclicPermutation::from_indices(&[1, 0, 2, 3]);
    assert_eq!(regular_genus(&g, &eps).unwrap(), 1);
}

#[test]
fn sphere_reduce_consistent_across_one_dipole_move() {
    // A graph and its image under a single proper dipole move never get
    // contradictory sphere verdicts.
    use gemkit::moves::{eliminate_dipole, find_dipoles, sphere_reduce, SphereValue};
    for seed in 1..12u64 {
        let g = gemkit::generator::random_sphere3_gem(seed.wrapping_mul(13) + 5, 4);
        let before = sphere_reduce(&g, 30_000).value;
        for d in find_dipoles(&g) {
            if d.proper != gemkit::gem::Certainty::Yes {
                continue;
            }
            let Ok(next) = eliminate_dipole(&g, &d) else { continue };
            let after = sphere_reduce(&next, 30_000).value;
            let contradictory = matches!(
                (before, after),
                (SphereValue::Sphere, SphereValue::NotSphere)
                    | (SphereValue::NotSphere, SphereValue::Sphere)
            );
            assert!(!contradictory, "seed {} dipole {:?}", seed, d);
        }
    }
}

#[test]
fn move_trace_replay_round_trip() {
    use gemkit::moves::{apply_trace, sphere_reduce, SphereValue};
    for seed in 1..8u64 {
        let g = gemkit::generator::random_sphere3_gem(seed + 40, 4);
        let v = sphere_reduce(&g, 50_000);
        if v.value == SphereValue::Sphere {
            let end = apply_trace(&g, &v.trace).unwrap();
            assert_eq!(end.order(), 2);
            // serialized trace replays identically
            let json = serde_json::to_string(&v.trace).unwrap();
            let back: Vec<gemkit::moves::ElimMove> = serde_json::from_str(&json).unwrap();
            assert_eq!(apply_trace(&g, &back).unwrap().order(), 2);
        }
    }
}

#[test]
fn residue_relation_on_boundary_case_fixtures() {
    // Gems with a singular apex color satisfy the same residue-count
    // relation and defect non-negativity; the disk-bundle and
    // handlebody fixtures exercise the boundary case.
    for (name, m, mp) in [("xi2", 0u32, 0u32), ("xi3", 0, 0), ("y41", 1, 0), ("y42", 2, 0)] {
        let path = format!(
            "{}/../../fixtures/{}.gem",
            env!("CARGO_MANIFEST_DIR"),
            name
        );
        let g = gemkit::parse_gem(&std::fs::read_to_string(path).unwrap()).unwrap();
        let ctx = ManifoldContext::new(m, mp).unwrap();
        for eps in canonical_p4() {
            let prof = genus_profile(&g, &eps, &ctx).unwrap();
            assert!(prof.defects.values().all(|&t| t >= 0), "{} {}", name, eps);
            let rep = check_rho_difference(&g, &eps, &ctx, true).unwrap();
            assert!(rep.rho_prime - rep.rho <= rep.q, "{} {}", name, eps);
        }
    }
}

#[test]
fn weak_semi_simple_central_genus_formula() {
    // For a weak semi-simple crystallization the central surface genus
    // equals ½(ρ_ε − m) + (m − m'), across the bundled fixtures.
    use gemkit::trisection::{quasi_trisection, TrisectOptions};
    let opts = TrisectOptions::default();
    for (name, m, mp) in [
        ("cp2", 0u32, 0u32),
        ("xi2", 0, 0),
        ("xi3", 0, 0),
        ("y41", 1, 0),
        ("y42", 2, 0),
        ("y41cp2", 1, 0),
    ] {
        let path = format!("{}/../../fixtures/{}.gem", env!("CARGO_MANIFEST_DIR"), name);
        let g = gemkit::parse_gem(&std::fs::read_to_string(path).unwrap()).unwrap();
        let ctx = ManifoldContext::new(m, mp).unwrap();
        for eps in canonical_p4() {
            if !gemkit::genus::is_weak_semi_simple(&g, &eps, &ctx).unwrap() {
                continue;
            }
            let rho = regular_genus(&g, &eps).unwrap();
            let rep = quasi_trisection(&g, &eps, &opts).unwrap();
            assert_eq!(
                rep.genus_central,
                (rho - m as i64) / 2 + (m as i64 - mp as i64),
                "{} {}",
                name,
                eps
            );
        }
    }
}
