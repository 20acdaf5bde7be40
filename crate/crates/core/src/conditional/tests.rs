use super::*;
use crate::divergence::renyi_entropy;
use crate::objects::{random_density, random_pure_state, KrausChannel, PureState, SeededRng};
use num_complex::Complex64;

const GRID: [Alpha; 9] = [
    Alpha::Zero,
    Alpha::Finite(0.25),
    Alpha::Finite(0.5),
    Alpha::Finite(0.75),
    Alpha::One,
    Alpha::Finite(1.5),
    Alpha::Finite(2.0),
    Alpha::Finite(3.0),
    Alpha::Infinity,
];

fn layout(d: &[usize]) -> SubsystemLayout {
    SubsystemLayout::from_dims(d).unwrap()
}

fn cfg() -> OptimizerConfig {
    OptimizerConfig::default()
}

fn all_kinds(rho: &DensityOperator, alpha: Alpha) -> Vec<f64> {
    EntropyKind::ALL
        .iter()
        .map(|&k| entropy(k, rho, "A", "B", alpha, &cfg()).unwrap().value)
        .collect()
}

/// Arimoto conditional entropy of a joint distribution `p[x][y]`.
fn arimoto(p: &[Vec<f64>], alpha: Alpha) -> f64 {
    let ny = p[0].len();
    let col = |y: usize| p.iter().map(move |row| row[y]);
    match alpha {
        Alpha::Infinity => -(0..ny)
            .map(|y| col(y).fold(0.0, f64::max))
            .sum::<f64>()
            .log2(),
        Alpha::Zero => (0..ny)
            .map(|y| col(y).filter(|&v| v > 0.0).count() as f64)
            .fold(0.0, f64::max)
            .log2(),
        Alpha::One => {
            let mut h = 0.0;
            for y in 0..ny {
                let py: f64 = col(y).sum();
                for v in col(y).filter(|&v| v > 0.0) {
                    h -= v * (v / py).log2();
                }
            }
            h
        }
        Alpha::Finite(a) => {
            let s: f64 = (0..ny)
                .map(|y| col(y).map(|v| v.powf(a)).sum::<f64>().powf(1.0 / a))
                .sum();
            a / (1.0 - a) * s.log2()
        }
    }
}

fn classical_state(p: &[Vec<f64>]) -> DensityOperator {
    let flat: Vec<f64> = p.iter().flatten().cloned().collect();
    DensityOperator::diagonal(&flat, layout(&[p.len(), p[0].len()])).unwrap()
}

#[test]
fn maximally_mixed_gives_log_dimension() {
    let rho = DensityOperator::maximally_mixed(layout(&[3, 2]));
    for a in GRID {
        for v in all_kinds(&rho, a) {
            assert!((v - 3f64.log2()).abs() < 1e-8, "α {a}: {v}");
        }
    }
}

#[test]
fn maximally_entangled_gives_minus_one() {
    let rho = PureState::maximally_entangled(2, ["A", "B"])
        .unwrap()
        .density();
    for a in GRID {
        for (k, v) in EntropyKind::ALL.iter().zip(all_kinds(&rho, a)) {
            // below ½ the sandwiched supremum sits at a pure σ_B:
            // −D̃_α(ψ‖1⊗|0⟩⟨0|) = −α/(1−α)
            let expected = match (*k, a.value()) {
                (EntropyKind::SANDWICHED_UP, x) if x < 0.5 => -x / (1.0 - x),
                _ => -1.0,
            };
            assert!((v - expected).abs() < 1e-7, "{k} α {a}: {v}");
        }
    }
}

#[test]
fn product_states_reduce_to_unconditional_entropy() {
    let mut rng = SeededRng::new(3);
    let ra = random_density(&layout(&[3]), 3, &mut rng).unwrap();
    let rb = random_density(&layout(&[2]), 2, &mut rng).unwrap();
    let rho = DensityOperator::new(ra.tensor(&rb), layout(&[3, 2])).unwrap();
    for a in GRID {
        let expected = renyi_entropy(&ra, a).unwrap();
        assert!(
            (h_down_old(&rho, "A", "B", a).unwrap() - expected).abs() < 1e-9,
            "α {a}"
        );
        assert!(
            (h_up_old(&rho, "A", "B", a).unwrap().value - expected).abs() < 1e-9,
            "α {a}"
        );
        assert!(
            (h_down_sandwiched(&rho, "A", "B", a).unwrap() - expected).abs() < 1e-9,
            "α {a}"
        );
    }
}

#[test]
fn classical_states_match_arimoto() {
    let p = vec![vec![0.1, 0.25, 0.05], vec![0.3, 0.05, 0.25]];
    let rho = classical_state(&p);
    for a in GRID {
        let expected = arimoto(&p, a);
        let up = h_up_old(&rho, "A", "B", a).unwrap().value;
        assert!((up - expected).abs() < 1e-10, "α {a}: {up} vs {expected}");
        if a != Alpha::Zero {
            let sw = h_up_sandwiched(&rho, "A", "B", a, &cfg()).unwrap();
            assert!(sw.converged);
            assert!(
                (sw.value - expected).abs() < 1e-7,
                "α {a}: {} vs {expected}",
                sw.value
            );
        }
        let down_o = h_down_old(&rho, "A", "B", a).unwrap();
        let down_s = h_down_sandwiched(&rho, "A", "B", a).unwrap();
        assert!((down_o - down_s).abs() < 1e-10, "α {a}");
    }
}

/// Direct maximization of `−D_α(ρ‖1⊗σ)` over the Bloch ball by a shrinking
/// pattern search, independent of the closed form.
fn bloch_search(rho: &DensityOperator, alpha: Alpha) -> f64 {
    let sigma_of = |r: [f64; 3]| {
        let m = ComplexMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(0.5 * (1.0 + r[2]), 0.0),
                Complex64::new(0.5 * r[0], -0.5 * r[1]),
                Complex64::new(0.5 * r[0], 0.5 * r[1]),
                Complex64::new(0.5 * (1.0 - r[2]), 0.0),
            ],
        );
        HermitianOperator::new(m).unwrap()
    };
    let eval = |r: [f64; 3]| {
        let n = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
        if n >= 0.999_999 {
            return f64::NEG_INFINITY;
        }
        old_objective(rho, "A", "B", &sigma_of(r), alpha).unwrap()
    };
    let mut best = [0.0; 3];
    let mut fb = eval(best);
    let mut h = 0.25;
    while h > 1e-9 {
        let mut improved = false;
        for k in 0..3 {
            for s in [-1.0, 1.0] {
                let mut c = best;
                c[k] += s * h;
                let fc = eval(c);
                if fc > fb {
                    fb = fc;
                    best = c;
                    improved = true;
                }
            }
        }
        if !improved {
            h *= 0.5;
        }
    }
    fb
}

#[test]
fn closed_form_matches_direct_maximization() {
    let mut rng = SeededRng::new(12);
    for _ in 0..5 {
        let rho = random_density(&layout(&[2, 2]), 4, &mut rng).unwrap();
        for a in [0.5, 0.8, 1.5, 2.0] {
            let closed = h_up_old(&rho, "A", "B", Alpha::Finite(a)).unwrap().value;
            let direct = bloch_search(&rho, Alpha::Finite(a));
            assert!(
                (closed - direct).abs() < 1e-6,
                "α {a}: {closed} vs {direct}"
            );
        }
    }
}

#[test]
fn closed_form_optimizer_is_stationary() {
    let mut rng = SeededRng::new(13);
    let rho = random_density(&layout(&[2, 3]), 6, &mut rng).unwrap();
    for a in [0.5, 2.0] {
        let res = h_up_old(&rho, "A", "B", Alpha::Finite(a)).unwrap();
        let star = res.optimizer_sigma.unwrap();
        let base = old_objective(&rho, "A", "B", &star, Alpha::Finite(a)).unwrap();
        assert!((base - res.value).abs() < 1e-10);
        for _ in 0..20 {
            let g = rng.ginibre(3, 3);
            let h = HermitianOperator::from_matrix_unchecked(&g + g.adjoint());
            let h = h.sub(&HermitianOperator::identity(3).scale(h.trace() / 3.0));
            let h = h.scale(1e-3 / h.operator_norm().unwrap());
            let v = old_objective(&rho, "A", "B", &star.add(&h), Alpha::Finite(a)).unwrap();
            assert!(v <= base + 1e-9);
        }
    }
}

#[test]
fn collision_form_agrees() {
    let mut rng = SeededRng::new(14);
    for _ in 0..20 {
        let rho = random_density(&layout(&[2, 3]), 6, &mut rng).unwrap();
        let a = h_down_sandwiched(&rho, "A", "B", Alpha::Finite(2.0)).unwrap();
        let b = collision_entropy(&rho, "A", "B").unwrap();
        assert!((a - b).abs() < 1e-9);
    }
}

#[test]
fn all_kinds_agree_at_one() {
    let mut rng = SeededRng::new(15);
    for _ in 0..5 {
        let rho = random_density(&layout(&[2, 3]), 3, &mut rng).unwrap();
        let v = all_kinds(&rho, Alpha::One);
        assert!(v.iter().all(|x| (x - v[0]).abs() < 1e-8), "{v:?}");
    }
}

#[test]
fn figure_one_ordering() {
    let mut rng = SeededRng::new(16);
    for _ in 0..5 {
        let rho = random_density(&layout(&[2, 2]), 4, &mut rng).unwrap();
        for a in [0.5, 0.75, 1.5, 2.0, 3.0] {
            let v = all_kinds(&rho, Alpha::Finite(a));
            let (od, ou, sd, su) = (v[0], v[1], v[2], v[3]);
            assert!(
                od <= ou + 1e-6 && sd <= su + 1e-6 && od <= sd + 1e-6 && ou <= su + 1e-6,
                "α {a}: {v:?}"
            );
        }
    }
}

#[test]
fn trivial_conditioning_system() {
    let mut rng = SeededRng::new(17);
    let rho = random_density(&layout(&[3, 1]), 3, &mut rng).unwrap();
    let ra = rho.marginal(&["A"]).unwrap();
    for a in [Alpha::Finite(0.5), Alpha::Finite(2.0), Alpha::Infinity] {
        let v = h_up_sandwiched(&rho, "A", "B", a, &cfg()).unwrap().value;
        assert!((v - renyi_entropy(&ra, a).unwrap()).abs() < 1e-10);
    }
}

fn pure_abc(seed: u64, dims: &[usize]) -> DensityOperator {
    random_pure_state(&layout(dims), &mut SeededRng::new(seed)).density()
}

#[test]
fn sandwiched_up_duality() {
    for seed in 0..3 {
        let rho = pure_abc(seed, &[2, 2, 2]);
        for (a, b) in [(2.0, 2.0 / 3.0), (0.75, 1.5), (3.0, 0.6)] {
            let x = h_up_sandwiched(&rho, "A", "B", Alpha::Finite(a), &cfg()).unwrap();
            let y = h_up_sandwiched(&rho, "A", "C", Alpha::Finite(b), &cfg()).unwrap();
            assert!(x.converged && y.converged);
            assert!(
                (x.value + y.value).abs() < 1e-5,
                "({a},{b}): {} vs {}",
                x.value,
                y.value
            );
        }
        let half = h_up_sandwiched(&rho, "A", "B", Alpha::Finite(0.5), &cfg()).unwrap();
        let inf = h_up_sandwiched(&rho, "A", "C", Alpha::Infinity, &cfg()).unwrap();
        assert!(
            (half.value + inf.value).abs() < 1e-5,
            "{} vs {}",
            half.value,
            inf.value
        );
        assert!((half.fidelity_value.unwrap() - half.value).abs() < 1e-9);
    }
}

#[test]
fn old_up_infinity_limit() {
    for seed in 0..5 {
        let rho = pure_abc(seed + 10, &[2, 2, 3]);
        let inf = h_up_old(&rho, "A", "B", Alpha::Infinity).unwrap().value;
        let large = h_up_old(&rho, "A", "B", Alpha::Finite(1e3)).unwrap().value;
        assert!(
            large >= inf - 1e-9 && large - inf < 1e-2,
            "{large} vs {inf}"
        );
        // dual partner: sandwiched-down at order zero on A|C
        let dual = h_down_sandwiched(&rho, "A", "C", Alpha::Zero).unwrap();
        assert!((inf + dual).abs() < 1e-8, "{inf} vs {dual}");
    }
}

#[test]
fn down_dualities() {
    for seed in 0..5 {
        let rho = pure_abc(seed + 20, &[2, 3, 2]);
        for a in [0.25, 0.5, 1.5, 1.75] {
            let x = h_down_old(&rho, "A", "B", Alpha::Finite(a)).unwrap();
            let y = h_down_old(&rho, "A", "C", Alpha::Finite(2.0 - a)).unwrap();
            assert!((x + y).abs() < 1e-8, "α {a}");
            let x = h_up_old(&rho, "A", "B", Alpha::Finite(a)).unwrap().value;
            let y = h_down_sandwiched(&rho, "A", "C", Alpha::Finite(1.0 / a)).unwrap();
            assert!((x + y).abs() < 1e-8, "α {a}");
        }
        let x = h_down_old(&rho, "A", "B", Alpha::Zero).unwrap();
        let y = h_down_old(&rho, "A", "C", Alpha::Finite(2.0)).unwrap();
        assert!((x + y).abs() < 1e-8);
    }
}

#[test]
fn local_channels_do_not_decrease_entropy() {
    let mut rng = SeededRng::new(30);
    for _ in 0..3 {
        let rho = random_density(&layout(&[2, 3]), 6, &mut rng).unwrap();
        let ch = KrausChannel::random(3, 2, 3, &mut rng).unwrap();
        let out = ch.apply(&rho, "B").unwrap();
        for a in [0.5, 1.5, 2.0] {
            for k in EntropyKind::ALL {
                let before = entropy(k, &rho, "A", "B", Alpha::Finite(a), &cfg())
                    .unwrap()
                    .value;
                let after = entropy(k, &out, "A", "B", Alpha::Finite(a), &cfg())
                    .unwrap()
                    .value;
                assert!(after >= before - 1e-6, "{k} α {a}");
            }
        }
    }
}

#[test]
fn subsystem_order_and_extra_systems() {
    let rho = pure_abc(40, &[2, 3, 2]);
    let ab = rho.marginal(&["A", "B"]).unwrap();
    for a in [Alpha::Finite(0.5), Alpha::Finite(2.0)] {
        let full = h_up_old(&rho, "A", "B", a).unwrap().value;
        let reduced = h_up_old(&ab, "A", "B", a).unwrap().value;
        assert!((full - reduced).abs() < 1e-12);
        // H(B|A) on the same state uses the swapped bipartition
        let swapped = h_down_old(&rho, "B", "A", a).unwrap();
        let (op, l) = permute_subsystems(ab.operator(), ab.layout(), &["B", "A"]).unwrap();
        let relabeled = SubsystemLayout::new(vec!["A", "B"], l.dims().to_vec()).unwrap();
        let direct =
            h_down_old(&DensityOperator::new(op, relabeled).unwrap(), "A", "B", a).unwrap();
        assert!((swapped - direct).abs() < 1e-12);
    }
    assert!(matches!(
        h_down_old(&rho, "A", "A", Alpha::One),
        Err(Error::Layout(_))
    ));
    assert!(h_down_old(&rho, "A", "Q", Alpha::One).is_err());
}

#[test]
fn kind_names_round_trip() {
    for k in EntropyKind::ALL {
        assert_eq!(k.name().parse::<EntropyKind>().unwrap(), k);
    }
    assert!("old".parse::<EntropyKind>().is_err());
}
