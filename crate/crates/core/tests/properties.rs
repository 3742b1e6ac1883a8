use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use padic_circle::action::{act, act_character, ActionContext};
use padic_circle::kummer::{kummer_mul, kummer_pair, KummerBase, KummerElement};
use padic_circle::measures::{product_measure, pushforward_halving, EisensteinMeasure, Measure};
use padic_circle::rational::reduce_rational;
use padic_circle::{mahler_coeffs, ContinuousFn, CyclotomicElem, DualNumber, PadicContext, PadicInt, QExpansion, TwoVarFn};

fn ctx_for(p: u64) -> PadicContext {
    PadicContext::new(p, 6, 24).unwrap()
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7])
}

fn cyclo(ctx: &PadicContext, level: u32, coords: &[i64]) -> CyclotomicElem {
    let mut acc = CyclotomicElem::zero(ctx, level);
    for (i, &c) in coords.iter().enumerate() {
        let term = CyclotomicElem::zeta_power(ctx, level, i as i128).scale(&PadicInt::from_int(ctx, c));
        acc = &acc + &term;
    }
    acc
}

fn step_fn(ctx: &PadicContext, level: u32, seed: &[i64]) -> ContinuousFn {
    let size = ctx.p.pow(level) as usize;
    let values: Vec<i64> = (0..size).map(|i| seed[i % seed.len()] + i as i64).collect();
    ContinuousFn::step(ctx, level, &values).unwrap()
}

fn series(ctx: &PadicContext, coeffs: &[i64]) -> QExpansion<PadicInt> {
    QExpansion::from_fn(ctx, |n| PadicInt::from_int(ctx, coeffs[n % coeffs.len()] * (n as i64 + 1)))
}

/// A function of one of the exactly representable shapes.
fn shaped_fn(ctx: &PadicContext, shape: u8, seed: &[i64]) -> ContinuousFn {
    match shape % 4 {
        0 => step_fn(ctx, 1 + (seed[0].unsigned_abs() % 2) as u32, seed),
        1 => ContinuousFn::polynomial(seed.iter().take(4).map(|&c| PadicInt::from_int(ctx, c)).collect()),
        2 => ContinuousFn::character_power(ctx, 1 + (seed[0].unsigned_abs() % 2) as u32, *seed.last().unwrap()),
        _ => ContinuousFn::zero_extended_units(ContinuousFn::monomial(ctx, (seed[0].unsigned_abs() % 4) as usize)),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn padic_ring_laws(p in prime(), x in any::<i64>(), y in any::<i64>(), z in any::<i64>()) {
        let ctx = ctx_for(p);
        let (x, y, z) = (PadicInt::from_int(&ctx, x), PadicInt::from_int(&ctx, y), PadicInt::from_int(&ctx, z));
        prop_assert_eq!((x + y) + z, x + (y + z));
        prop_assert_eq!((x * y) * z, x * (y * z));
        prop_assert_eq!(x * (y + z), x * y + x * z);
        prop_assert_eq!(x * y, y * x);
        prop_assert_eq!(x - x, PadicInt::zero(&ctx));
    }

    #[test]
    fn cyclotomic_ring_laws(
        p in prime(),
        level in 1u32..=2,
        a in prop::collection::vec(-50i64..50, 1..8),
        b in prop::collection::vec(-50i64..50, 1..8),
        c in prop::collection::vec(-50i64..50, 1..8),
    ) {
        let ctx = ctx_for(p);
        let (x, y, z) = (cyclo(&ctx, level, &a), cyclo(&ctx, level, &b), cyclo(&ctx, 1, &c));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x + &y) - &y, x);
    }

    #[test]
    fn dual_number_powers(p in prime(), n in 0u64..40) {
        let ctx = ctx_for(p);
        let one = PadicInt::one(&ctx);
        let tangent = DualNumber::one_plus_eps(&one);
        let mut acc = DualNumber::real(one);
        for _ in 0..n {
            acc = acc * tangent.clone();
        }
        prop_assert_eq!(acc, DualNumber::new(one, PadicInt::from_int(&ctx, n as i64)));
    }

    #[test]
    fn cyclo_pow_is_periodic(p in prime(), level in 1u32..=2, u in 0i128..50, e in -200i64..200) {
        let ctx = ctx_for(p);
        let x = CyclotomicElem::zeta_power(&ctx, level, u);
        let shifted = PadicInt::from_int(&ctx, e + p.pow(level) as i64);
        prop_assert_eq!(x.cyclo_pow(&PadicInt::from_int(&ctx, e)).unwrap(), x.cyclo_pow(&shifted).unwrap());
    }

    #[test]
    fn reduce_rational_inverts_denominator(p in prime(), num in -10_000i64..10_000, den in 1i64..10_000) {
        let ctx = ctx_for(p);
        prop_assume!(den % p as i64 != 0);
        let r = BigRational::new(BigInt::from(num), BigInt::from(den));
        let x = reduce_rational(&r, &ctx).unwrap();
        prop_assert_eq!(x * PadicInt::from_int(&ctx, den), PadicInt::from_int(&ctx, num));
    }

    #[test]
    fn mahler_reconstruction(p in prime(), shape in any::<u8>(), seed in prop::collection::vec(-9i64..10, 2..6)) {
        let ctx = ctx_for(p);
        let f = shaped_fn(&ctx, shape, &seed);
        let k_max = 30;
        let c = mahler_coeffs(&f, k_max);
        for n in 0..=k_max as u64 {
            let mut sum = CyclotomicElem::zero(&ctx, 0);
            for (k, ck) in c.iter().enumerate().take(n as usize + 1) {
                sum = &sum + &ck.scale(&PadicInt::from_bigint(&ctx, &padic_circle::rational::binomial(n, k as u64)));
            }
            prop_assert_eq!(sum, f.eval_at(n as i128));
        }
    }

    #[test]
    fn multiply_and_scale_commute_with_evaluation(
        p in prime(),
        s1 in any::<u8>(),
        s2 in any::<u8>(),
        seed in prop::collection::vec(-9i64..10, 2..6),
        u in 1i64..100,
        xs in prop::collection::vec(-1000i128..1000, 50),
    ) {
        let ctx = ctx_for(p);
        prop_assume!(u % p as i64 != 0);
        let (f, g) = (shaped_fn(&ctx, s1, &seed), shaped_fn(&ctx, s2, &seed[1..]));
        let fg = f.multiply(&g);
        let scaled = f.scale_argument(&PadicInt::from_int(&ctx, u)).unwrap();
        for &x in &xs {
            prop_assert_eq!(fg.eval_at(x), &f.eval_at(x) * &g.eval_at(x));
            prop_assert_eq!(scaled.eval_at(x), f.eval_at(u as i128 * x));
        }
    }

    #[test]
    fn zero_extension_vanishes_off_units(p in prime(), seed in prop::collection::vec(-9i64..10, 2..6), x in -500i128..500) {
        let ctx = ctx_for(p);
        let f = step_fn(&ctx, 2, &seed);
        let z = ContinuousFn::zero_extended_units(f.clone());
        if x.rem_euclid(p as i128) == 0 {
            prop_assert!(z.eval_at(x).is_zero());
        } else {
            prop_assert_eq!(z.eval_at(x), f.eval_at(x));
        }
    }

    #[test]
    fn theta_is_a_derivation(p in prime(), a in prop::collection::vec(-99i64..99, 1..6), b in prop::collection::vec(-99i64..99, 1..6)) {
        let ctx = ctx_for(p);
        let (g, h) = (series(&ctx, &a), series(&ctx, &b));
        prop_assert_eq!((&g * &h).theta(), &(&g.theta() * &h) + &(&g * &h.theta()));
    }

    #[test]
    fn u_p_is_left_inverse_to_v_p(p in prime(), a in prop::collection::vec(-99i64..99, 1..6)) {
        let ctx = ctx_for(p);
        let g = series(&ctx, &a);
        let back = g.v_p().u_p();
        prop_assert!((0..=back.q_prec()).all(|n| back.coeff(n) == g.coeff(n)));
        let proj = g.u_p().v_p();
        for n in 0..=proj.q_prec() {
            let expected = if n % p as usize == 0 { *g.coeff(n) } else { PadicInt::zero(&ctx) };
            prop_assert_eq!(*proj.coeff(n), expected);
        }
    }

    #[test]
    fn action_is_linear(p in prime(), s1 in any::<u8>(), s2 in any::<u8>(), seed in prop::collection::vec(-9i64..10, 2..6), a in prop::collection::vec(-99i64..99, 1..6)) {
        let ctx = ctx_for(p);
        let (f, f2) = (shaped_fn(&ctx, s1, &seed), shaped_fn(&ctx, s2, &seed[1..]));
        let g = series(&ctx, &a).to_cyclo();
        let h = series(&ctx, &seed).to_cyclo();
        prop_assert_eq!(act(&f, &(&g + &h)).unwrap(), &act(&f, &g).unwrap() + &act(&f, &h).unwrap());
        let sum = ContinuousFn::step(&ctx, 0, &[1]).unwrap();
        prop_assert_eq!(act(&sum, &g).unwrap(), g.clone());
        let both = act(&f, &g).unwrap();
        let pointwise = g.map_indexed(|n, c| &(&f.eval_at(n as i128) + &f2.eval_at(n as i128)) * c);
        prop_assert_eq!(&both + &act(&f2, &g).unwrap(), pointwise);
    }

    #[test]
    fn characters_act_as_a_group(p in prime(), u in 0i128..30, v in 0i128..30, a in prop::collection::vec(-99i64..99, 1..6)) {
        let ctx = ctx_for(p);
        let actx = ActionContext::new(ctx, 2);
        let g = series(&ctx, &a).to_cyclo();
        let (z1, z2) = (CyclotomicElem::zeta_power(&ctx, 2, u), CyclotomicElem::zeta_power(&ctx, 1, v));
        let nested = act_character(&actx, &z1, &act_character(&actx, &z2, &g).unwrap()).unwrap();
        prop_assert_eq!(nested, act_character(&actx, &(&z1 * &z2), &g).unwrap());
    }

    #[test]
    fn kummer_law_and_pairing(p in prop::sample::select(vec![3u64, 5]), k in 1u32..=2, xs in prop::collection::vec(any::<u64>(), 6)) {
        let base = KummerBase::new(p, k, 2 * k, 4).unwrap();
        let e = |i: usize| KummerElement::new(&base, xs[2 * i], xs[2 * i + 1]);
        let (x, y, z) = (e(0), e(1), e(2));
        let order = base.order();
        prop_assert_eq!(kummer_mul(&x, &y).unwrap(), kummer_mul(&y, &x).unwrap());
        let xy = kummer_mul(&x, &y).unwrap();
        prop_assert_eq!(kummer_pair(&xy, &z).unwrap(), (kummer_pair(&x, &z).unwrap() + kummer_pair(&y, &z).unwrap()) % order);
        let yz = kummer_mul(&y, &z).unwrap();
        prop_assert_eq!(kummer_pair(&x, &yz).unwrap(), (kummer_pair(&x, &y).unwrap() + kummer_pair(&x, &z).unwrap()) % order);
        // projection to a is a homomorphism
        prop_assert_eq!(xy.a, (x.a + y.a) % order);
    }

    #[test]
    fn eisenstein_measure_basic_congruence(seed in prop::collection::vec(-9i64..10, 2..6), h in prop::collection::vec(-9i64..10, 2..6), e in 1u32..4) {
        let ctx = PadicContext::new(5, 8, 20).unwrap();
        let mu = EisensteinMeasure::new(&ctx, &PadicInt::from_int(&ctx, 2), 3).unwrap();
        let f = step_fn(&ctx, 1, &seed);
        let size = 25usize;
        let base: Vec<i64> = (0..size).map(|i| seed[i % seed.len()] + (i % 5) as i64).collect();
        let shifted: Vec<i64> = (0..size).map(|i| base[i] + 5i64.pow(e) * h[i % h.len()]).collect();
        let (f1, f2) = (ContinuousFn::step(&ctx, 2, &base).unwrap(), ContinuousFn::step(&ctx, 2, &shifted).unwrap());
        let diff = &mu.eval(&f1).unwrap() - &mu.eval(&f2).unwrap();
        prop_assert!(diff.valuation() >= e);
        prop_assert!(mu.eval(&f).is_ok());
    }

    #[test]
    fn product_measure_ignores_decomposition(c in 0u64..5, h1 in prop::collection::vec(-9i64..10, 5), h2 in prop::collection::vec(-9i64..10, 5)) {
        let ctx = PadicContext::new(5, 8, 12).unwrap();
        let mu = EisensteinMeasure::new(&ctx, &PadicInt::from_int(&ctx, 2), 3).unwrap();
        let bilinear = |f: &ContinuousFn, g: &ContinuousFn| act(g, &mu.eval(f)?);
        let x = ContinuousFn::indicator(&ctx, 1, c);
        let sum: Vec<i64> = h1.iter().zip(&h2).map(|(a, b)| a + b).collect();
        let one = TwoVarFn::pure(x.clone(), ContinuousFn::step(&ctx, 1, &sum).unwrap());
        let two = TwoVarFn::new(vec![
            (x.clone(), ContinuousFn::step(&ctx, 1, &h1).unwrap()),
            (x, ContinuousFn::step(&ctx, 1, &h2).unwrap()),
        ]);
        for gx in 0..25 {
            for gy in 0..25 {
                prop_assert_eq!(one.eval_at(gx, gy, &ctx), two.eval_at(gx, gy, &ctx));
            }
        }
        prop_assert_eq!(product_measure(&ctx, bilinear, &one).unwrap(), product_measure(&ctx, bilinear, &two).unwrap());
    }

    #[test]
    fn halving_is_composition(s in 0usize..4, shape in any::<u8>(), seed in prop::collection::vec(-9i64..10, 2..6)) {
        let ctx = PadicContext::new(5, 8, 12).unwrap();
        let g = shaped_fn(&ctx, shape, &seed);
        let f = TwoVarFn::pure(ContinuousFn::monomial(&ctx, s), g);
        let h = pushforward_halving(&f).unwrap();
        for x in 0..25i128 {
            for y in [0i128, 1, 2, 7, 13, 24] {
                prop_assert_eq!(h.eval_at(x, y, &ctx), f.eval_at(x, x * y, &ctx));
            }
        }
    }
}
