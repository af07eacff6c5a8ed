//! Library values against textbook formulas coded independently here.

use num_complex::Complex64 as C;
use qracah::params::{ParamSet, RacahParams, RoleQuad};
use qracah::transform::{build_k, forward};
use qracah::weights::{enumerate_alcove, orbit, Weight};
use qracah::{RacahSystem, System};

fn qpoch(a: C, q: C, k: u32) -> C {
    (0..k).fold(C::new(1.0, 0.0), |acc, j| acc * (1.0 - a * q.powu(j)))
}

fn poch(a: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (a + j as f64))
}

fn one_variable() -> ParamSet {
    ParamSet::truncated_trig(0.0, RoleQuad::new(0.7, 0.6, 0.3, -0.15), 1, 6).unwrap()
}

/// Discrete Askey-Wilson weight at `a q^k`, normalized to 1 at `k = 0`.
fn aw_weight(k: u32, q: C, [a, b, c, d]: [C; 4]) -> C {
    let mut w = (1.0 - a * a * q.powu(2 * k)) / (1.0 - a * a) * (q / (a * b * c * d)).powu(k);
    for t in [a, b, c, d] {
        w *= qpoch(a * t, q, k) / qpoch(q * a / t, q, k);
    }
    w
}

/// Terminating `₄φ₃(q^{-m}, abcd q^{m-1}, a z, a/z; ab, ac, ad; q, q)`.
fn aw_phi(m: u32, z: C, q: C, [a, b, c, d]: [C; 4]) -> C {
    let upper = [q.powi(-(m as i32)), a * b * c * d * q.powu(m) / q, a * z, a / z];
    let lower = [a * b, a * c, a * d, q];
    (0..=m)
        .map(|k| {
            let num: C = upper.iter().map(|&x| qpoch(x, q, k)).product();
            let den: C = lower.iter().map(|&x| qpoch(x, q, k)).product();
            num / den * q.powu(k)
        })
        .sum()
}

#[test]
fn alcove_matches_brute_force() {
    for (n, big_n) in [(1, 5), (2, 1), (2, 4), (3, 2), (3, 3)] {
        let mut brute = Vec::new();
        let total = (big_n as usize + 1).pow(n as u32);
        for code in 0..total {
            let parts: Vec<u32> = (0..n).map(|j| ((code / (big_n as usize + 1).pow(j as u32)) % (big_n as usize + 1)) as u32).collect();
            if parts.windows(2).all(|w| w[0] >= w[1]) {
                brute.push(parts);
            }
        }
        let got: Vec<Vec<u32>> = enumerate_alcove(n, big_n).iter().map(|w| w.parts().to_vec()).collect();
        assert_eq!(got.len(), brute.len(), "n={n} N={big_n}");
        brute.sort();
        let mut sorted = got.clone();
        sorted.sort();
        assert_eq!(sorted, brute);
    }
}

#[test]
fn orbits_match_signed_permutations() {
    for parts in [vec![1, 0], vec![2, 1], vec![2, 2], vec![3, 1, 0]] {
        let n = parts.len();
        let mut seen = std::collections::BTreeSet::new();
        for perm in permutations(n) {
            for signs in 0..(1u32 << n) {
                let v: Vec<i64> =
                    perm.iter().enumerate().map(|(j, &k)| if signs >> j & 1 == 1 { -(parts[k] as i64) } else { parts[k] as i64 }).collect();
                seen.insert(v);
            }
        }
        assert_eq!(orbit(&Weight::new(parts.clone()).unwrap()).len(), seen.len(), "{parts:?}");
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

#[test]
fn one_variable_weights_are_askey_wilson() {
    let p = one_variable();
    let sys = System::build(&p).unwrap();
    let t = p.by_role().to_array();
    for (k, d) in sys.table.delta.iter().enumerate() {
        let w = aw_weight(k as u32, p.q(), t);
        assert!((d - w).norm() < 1e-12 * w.norm(), "k={k}: {d} vs {w}");
    }
}

#[test]
fn one_variable_polynomials_are_basic_hypergeometric() {
    let p = one_variable();
    let sys = System::build(&p).unwrap();
    let t = p.by_role().to_array();
    for (m, row) in sys.big_p.values.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            let z = t[0] * p.q().powu(k as u32);
            let want = aw_phi(m as u32, z, p.q(), t);
            assert!((x - want).norm() < 1e-10 * want.norm().max(1.0), "m={m} k={k}: {x} vs {want}");
        }
    }
}

#[test]
fn first_polynomial_by_hand() {
    // p₁ = z + 1/z - ⟨z + 1/z, 1⟩ / ⟨1, 1⟩.
    let p = one_variable();
    let sys = System::build(&p).unwrap();
    let grid = qracah::polynomials::grid_points(&p);
    let moment: C = grid.iter().zip(&sys.table.delta).map(|(z, w)| (z[0] + 1.0 / z[0]) * w).sum();
    let constant = -moment / sys.table.one_one;
    let got = sys.family.polys[1].coeff(&Weight::zero(1));
    assert!((got - constant).norm() < 1e-12 * constant.norm().max(1.0));
}

#[test]
fn one_variable_racah_polynomials_are_wilson() {
    let (a, c, d) = (0.35, 0.15, 0.2);
    let rp = RacahParams::truncated(1, 5, 0.0, a, c, d).unwrap();
    let b = rp.by_role().b;
    let sys = RacahSystem::build(&rp).unwrap();
    for (m, row) in sys.big_p.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            let xv = a + k as f64;
            let top = m as u32;
            let want: f64 = (0..=top)
                .map(|j| {
                    poch(-(m as f64), j) * poch(m as f64 + a + b + c + d - 1.0, j) * poch(a + xv, j) * poch(a - xv, j)
                        / (poch(a + b, j) * poch(a + c, j) * poch(a + d, j) * poch(1.0, j))
                })
                .sum();
            assert!((x.re - want).abs() < 1e-10 * want.abs().max(1.0), "m={m} k={k}: {x} vs {want}");
        }
    }
}

#[test]
fn first_kernel_row_is_a_unit_vector() {
    let p = ParamSet::truncated_trig(0.3, RoleQuad::new(0.5, 0.4, 0.2, 0.1), 2, 4).unwrap();
    let sys = System::build(&p).unwrap();
    let k = build_k(&sys);
    let row: C = (0..sys.table.len()).map(|v| k.matrix[(0, v)] * k.matrix[(0, v)]).sum();
    assert!((row - 1.0).norm() < 1e-12);
}

#[test]
fn transform_of_a_polynomial_is_a_point_mass() {
    let p = ParamSet::truncated_trig(0.3, RoleQuad::new(0.5, 0.4, 0.2, 0.1), 2, 4).unwrap();
    let sys = System::build(&p).unwrap();
    let fwd = forward(&sys);
    let lam = 4;
    let image = fwd.apply(&sys.big_p.values[lam]).unwrap();
    // ⟨P_λ, P_μ⟩_Δ / √⟨1,1⟩ computed directly.
    for (mu, x) in image.iter().enumerate() {
        let direct: C = sys.big_p.values[lam]
            .iter()
            .zip(&sys.big_p.values[mu])
            .zip(&sys.table.delta)
            .map(|((f, g), w)| f * g * w)
            .sum::<C>()
            / sys.table.one_one.sqrt();
        assert!((x - direct).norm() < 1e-10 * image[lam].norm());
        if mu != lam {
            assert!(x.norm() < 1e-10 * image[lam].norm());
        }
    }
}
