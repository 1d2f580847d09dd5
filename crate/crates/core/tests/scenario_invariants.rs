use proptest::prelude::*;

use soliton_discord::becphys::RateSet;
use soliton_discord::dynamics::{evolve_closed_form, to_product};
use soliton_discord::scenarios::{closed_correlations, initial_state, ScenarioKind};
use soliton_discord::validation::{run_criterion, Status};

fn rs(big_gamma: f64, eta: f64) -> RateSet<f64> {
    RateSet { gamma: 1.0, big_gamma, eta }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn evolved_states_stay_physical(
        bg in -0.95f64..0.95,
        eta in -2.0f64..2.0,
        alpha in 0.0f64..=1.0,
        t in 0.0f64..8.0,
        k in 0usize..3,
    ) {
        let kind = ScenarioKind::ALL[k];
        let rho = evolve_closed_form(&initial_state(kind, alpha).unwrap(), &rs(bg, eta), t).unwrap();
        let ps = to_product(&rho);
        let ev = ps.rho().eigenvalues();
        prop_assert!(ev.iter().all(|v| *v >= -1e-12));
        prop_assert!((ps.matrix().trace().re - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn discord_nonnegative_for_superposition_and_mixed(
        bg in -0.95f64..0.95,
        eta in -2.0f64..2.0,
        alpha in 0.0f64..=1.0,
        t in 0.01f64..8.0,
    ) {
        for kind in [ScenarioKind::Superposition, ScenarioKind::Mixed] {
            let (c2, q) = closed_correlations(kind, t, &rs(bg, eta), alpha).unwrap();
            prop_assert!(c2 >= 0.0);
            prop_assert!(q >= -1e-6, "{kind} Q = {q}");
        }
    }

    #[test]
    fn entangled_discord_nonnegative_without_collective_damping(
        eta in -2.0f64..2.0,
        alpha in 0.0f64..=1.0,
        t in 0.01f64..8.0,
    ) {
        let (_, q) = closed_correlations(ScenarioKind::Entangled, t, &rs(0.0, eta), alpha).unwrap();
        prop_assert!(q >= -1e-6, "Q = {q}");
    }
}

#[test]
fn entangled_discord_dips_below_zero_with_collective_damping() {
    // I - C2 mixes von Neumann and linear entropies, so it is not sign-definite.
    let (_, q) = closed_correlations(ScenarioKind::Entangled, 0.52, &rs(-0.6, 0.0), 0.9).unwrap();
    assert!(q < -0.03, "Q = {q}");
}

#[test]
fn criterion_report_line() {
    let r = run_criterion(7).unwrap();
    assert_eq!(r.status, Status::Pass);
    assert!(r.to_string().starts_with("[PASS]  7 rate structure"));
}
