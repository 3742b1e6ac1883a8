//! Acceptance criteria, each checked against oracles computed here from
//! scratch: Bernoulli numbers by the Akiyama-Tanigawa algorithm, divisor
//! sums by trial division, and p-adic reduction by modular exponentiation.
//!
//! Runs without the test harness and prints one PASS/FAIL line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use padic_circle::action::{act, act_character, derivative_check, ActionContext};
use padic_circle::eisenstein::{eisenstein_2g, phi_coefficient_exact, phi_series};
use padic_circle::kummer::{
    cayley_table, kummer_mul, kummer_pair, realized_pairing, serre_tate_action_check,
    serre_tate_action_check_with, KummerBase, KummerElement, KummerGroup,
};
use padic_circle::measures::{
    convolution_nu, eisenstein_eval, eval_at_character, nu_moment_series, two_variable_l, AmiceSeries,
    AmiceTail, Dirac, EisensteinMeasure, KlConstantTerm, Measure, UnitCharacter,
};
use padic_circle::{ContinuousFn, CyclotomicElem, PadicContext, PadicInt, QExpansion, TwoVarFn};

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------- oracles ----------

/// B_n with B_1 = +1/2 (Akiyama-Tanigawa); only even n >= 2 are used.
fn bernoulli_oracle(n: usize) -> BigRational {
    let mut a: Vec<BigRational> = (0..=n).map(|m| BigRational::new(BigInt::one(), BigInt::from(m + 1))).collect();
    for m in 0..=n {
        a[m] = BigRational::new(BigInt::one(), BigInt::from(m + 1));
        for j in (1..=m).rev() {
            a[j - 1] = BigRational::from_integer(BigInt::from(j)) * (&a[j - 1] - &a[j]);
        }
    }
    a[0].clone()
}

/// `(1 - a^k) zeta(1 - k) = (1 - a^k)(-B_k / k)` for even k.
fn regularized_zeta_oracle(a: i64, k: u32) -> BigRational {
    let one_minus = BigRational::from_integer(BigInt::one() - BigInt::from(a).pow(k));
    one_minus * -bernoulli_oracle(k as usize) / BigRational::from_integer(BigInt::from(k))
}

fn sigma_oracle(e: u32, n: u64) -> BigInt {
    (1..=n).filter(|d| n % d == 0).map(|d| BigInt::from(d).pow(e)).sum()
}

fn p_valuation(x: &BigInt, p: u64) -> u32 {
    if x.is_zero() {
        return u32::MAX;
    }
    let (mut x, p, mut v) = (x.abs(), BigInt::from(p), 0);
    while (&x % &p).is_zero() {
        x /= &p;
        v += 1;
    }
    v
}

/// `r mod p^{N - d}` where `p^d` is the part of the denominator that cancels.
fn reduce_oracle(r: &BigRational, p: u64, n: u32) -> Option<(BigInt, u32)> {
    let d = p_valuation(r.denom(), p);
    if r.numer().is_zero() {
        return Some((BigInt::zero(), n));
    }
    if p_valuation(r.numer(), p) < d {
        return None;
    }
    let pd = BigInt::from(p).pow(d);
    let (num, den) = (r.numer() / &pd, r.denom() / &pd);
    let prec = n - d;
    let modulus = BigInt::from(p).pow(prec);
    let phi = &modulus / BigInt::from(p) * BigInt::from(p - 1);
    let inv = den.mod_floor(&modulus).modpow(&(phi - 1), &modulus);
    Some(((num * inv).mod_floor(&modulus), prec))
}

fn int_residue(x: &BigInt, p: u64, n: u32) -> BigInt {
    x.mod_floor(&BigInt::from(p).pow(n))
}

/// `x` agrees with `(residue, prec)` modulo `p^min(prec, prec(x))`.
fn agrees_with(x: &PadicInt, oracle: &(BigInt, u32), p: u64) -> bool {
    let e = oracle.1.min(x.prec());
    let m = BigInt::from(p).pow(e);
    BigInt::from(x.residue()).mod_floor(&m) == oracle.0.mod_floor(&m)
}

fn padic_coeff(g: &QExpansion<CyclotomicElem>, n: usize) -> std::result::Result<PadicInt, String> {
    g.coeff(n).as_padic().ok_or_else(|| format!("coefficient {n} is not in Z_p"))
}

fn random_fn(rng: &mut ChaCha8Rng, ctx: &PadicContext) -> ContinuousFn {
    match rng.gen_range(0..4) {
        0 => {
            let level = rng.gen_range(1..=2u32);
            let values: Vec<i64> = (0..ctx.p.pow(level)).map(|_| rng.gen_range(-9..10)).collect();
            ContinuousFn::step(ctx, level, &values).unwrap()
        }
        1 => ContinuousFn::polynomial((0..rng.gen_range(1..5)).map(|_| PadicInt::from_int(ctx, rng.gen_range(-9..10))).collect()),
        2 => ContinuousFn::character_power(ctx, rng.gen_range(1..=2), rng.gen_range(0..25)),
        _ => ContinuousFn::indicator(ctx, 1, rng.gen_range(0..ctx.p)),
    }
}

fn random_series(rng: &mut ChaCha8Rng, ctx: &PadicContext) -> QExpansion<PadicInt> {
    let modulus = ctx.p.pow(ctx.n) as i128;
    QExpansion::new(ctx, (0..=ctx.m).map(|_| PadicInt::from_i128(ctx, rng.gen_range(0..modulus))).collect())
}

fn desk(p: u64) -> PadicContext {
    PadicContext::new(p, 12, 60).unwrap()
}

// ---------- criteria ----------

fn eisenstein_moments() -> Check {
    let ctx = desk(5);
    let a = PadicInt::from_int(&ctx, 2);
    let mut checked = 0;
    for k in [2u32, 6, 10] {
        let g = eisenstein_eval(&ctx, &a, &ContinuousFn::monomial(&ctx, k as usize - 1)).map_err(|e| e.to_string())?;
        let base = eisenstein_2g(&ctx, k).map_err(|e| e.to_string())?;
        let factor = PadicInt::one(&ctx) - a.pow(k as u64);
        let constant = reduce_oracle(&regularized_zeta_oracle(2, k), 5, 12).ok_or("oracle constant has a pole")?;
        for n in 0..=60usize {
            let got = padic_coeff(&g, n)?;
            ensure(got == factor * *base.coeff(n), || format!("k = {k}, n = {n}: mismatch with (1 - a^k) 2G_k"))?;
            let oracle = if n == 0 {
                constant.clone()
            } else {
                let v = (BigInt::one() - BigInt::from(2).pow(k)) * 2 * sigma_oracle(k - 1, n as u64);
                (int_residue(&v, 5, 12), 12)
            };
            ensure(got.prec() == 12 && agrees_with(&got, &oracle, 5), || format!("k = {k}, n = {n}: oracle mismatch"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} coefficients equal mod 5^12"))
}

fn regularized_constants() -> Check {
    let ctx = desk(5);
    let kl = KlConstantTerm::new(&PadicInt::from_int(&ctx, 2), 3).map_err(|e| e.to_string())?;
    for k in (2..=12u32).step_by(2) {
        let oracle = reduce_oracle(&regularized_zeta_oracle(2, k), 5, 12).ok_or_else(|| format!("k = {k}: pole"))?;
        let got = kl.moment(k).map_err(|e| e.to_string())?;
        ensure(got.prec() >= 11 && oracle.1 >= 11, || format!("k = {k}: precision {} / {}", got.prec(), oracle.1))?;
        ensure(agrees_with(&got, &oracle, 5), || format!("k = {k}: {got} vs oracle {:?}", oracle))?;
    }
    let quarter = reduce_oracle(&BigRational::new(1.into(), 4.into()), 5, 12).unwrap();
    for k in [2u32, 6] {
        ensure(regularized_zeta_oracle(2, k) == BigRational::new(1.into(), 4.into()), || format!("oracle at k = {k}"))?;
        ensure(agrees_with(&kl.moment(k).unwrap(), &quarter, 5), || format!("spot value at k = {k}"))?;
    }
    Ok("k = 2..12 even match at precision >= 11; k = 2, 6 give 1/4".into())
}

fn kummer_congruence() -> Check {
    let ctx = desk(5);
    let a = PadicInt::from_int(&ctx, 2);
    let mu = EisensteinMeasure::new(&ctx, &a, 3).map_err(|e| e.to_string())?;
    let mut pairs = 0;
    for m in 1..=2u32 {
        let period = 4 * 5u32.pow(m - 1);
        for k in (m + 1).max(2)..=12 {
            for k2 in [k + period, k + 2 * period] {
                let g1 = mu.eval(&ContinuousFn::monomial(&ctx, k as usize - 1)).map_err(|e| e.to_string())?;
                let g2 = mu.eval(&ContinuousFn::monomial(&ctx, k2 as usize - 1)).map_err(|e| e.to_string())?;
                for n in 0..=60usize {
                    let v = (g1.coeff(n) - g2.coeff(n)).valuation();
                    ensure(v >= m, || format!("m = {m}, k = {k}, k' = {k2}, n = {n}: valuation {v}"))?;
                    if n > 0 {
                        let exact = (BigInt::one() - BigInt::from(2).pow(k)) * sigma_oracle(k - 1, n as u64)
                            - (BigInt::one() - BigInt::from(2).pow(k2)) * sigma_oracle(k2 - 1, n as u64);
                        ensure(p_valuation(&(exact * 2), 5) >= m, || format!("oracle m = {m}, k = {k}, n = {n}"))?;
                    }
                }
                if k % 2 == 0 {
                    let diff = regularized_zeta_oracle(2, k) - regularized_zeta_oracle(2, k2);
                    let v = p_valuation(diff.numer(), 5) as i64 - p_valuation(diff.denom(), 5) as i64;
                    ensure(diff.is_zero() || v >= m as i64, || format!("oracle constant m = {m}, k = {k}"))?;
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} weight pairs, all 61 coefficients each"))
}

fn convolution_theorem() -> Check {
    let ctx = desk(5);
    let mut cases = 0;
    for a_int in [2i64, 3] {
        let a = PadicInt::from_int(&ctx, a_int);
        let mu = EisensteinMeasure::new(&ctx, &a, 3).map_err(|e| e.to_string())?;
        for s in [1u32, 3, 5] {
            for t in 0..=3u32 {
                let conv = convolution_nu(&mu, &TwoVarFn::monomial(&ctx, s as usize, t as usize))
                    .and_then(|g| g.to_padic())
                    .map_err(|e| e.to_string())?;
                let closed = nu_moment_series(&ctx, &a, s, t).map_err(|e| e.to_string())?;
                ensure(conv == closed, || format!("a = {a_int}, s = {s}, t = {t}: paths differ at {:?}", conv.first_disagreement(&closed)))?;
                for n in 0..=60u64 {
                    let oracle = if n == 0 {
                        if t == 0 {
                            reduce_oracle(&regularized_zeta_oracle(a_int, s + 1), 5, 12).ok_or("pole")?
                        } else {
                            (BigInt::zero(), 12)
                        }
                    } else {
                        let v = (BigInt::one() - BigInt::from(a_int).pow(s + 1))
                            * BigInt::from(n).pow(t)
                            * 2
                            * sigma_oracle(s, n);
                        (int_residue(&v, 5, 12), 12)
                    };
                    ensure(agrees_with(conv.coeff(n as usize), &oracle, 5), || format!("a = {a_int}, s = {s}, t = {t}, n = {n}: oracle"))?;
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (a, s, t) cases agree on both paths and the oracle"))
}

fn phi_identity() -> Check {
    let ctx = desk(5);
    for k in 1..=8u32 {
        for r in 1..=k {
            let series = phi_series(&ctx, k, r);
            for n in 1..=60u64 {
                let lhs = BigInt::from(n).pow(r) * 2 * sigma_oracle(k - r, n);
                let rhs: BigInt = (1..=n)
                    .filter(|d| n % d == 0)
                    .map(|d| BigInt::from(d).pow(k) * BigInt::from(n / d).pow(r))
                    .sum::<BigInt>()
                    * 2;
                ensure(lhs == rhs, || format!("k = {k}, r = {r}, n = {n}: {lhs} != {rhs}"))?;
                ensure(phi_coefficient_exact(k, r, n) == rhs, || format!("library exact Phi at k = {k}, r = {r}, n = {n}"))?;
                ensure(agrees_with(series.coeff(n as usize), &(int_residue(&rhs, 5, 12), 12), 5), || format!("Phi series k = {k}, r = {r}, n = {n}"))?;
            }
        }
    }
    Ok("36 (k, r) pairs, n <= 60, exact integers".into())
}

fn action_laws() -> Check {
    let ctx = desk(5);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let series: Vec<_> = (0..10).map(|_| random_series(&mut rng, &ctx).to_cyclo()).collect();
    let one = ContinuousFn::constant(&ctx, 1);
    for g in &series {
        ensure(act(&one, g).map_err(|e| e.to_string())? == *g, || "act(1, g) != g".into())?;
    }
    for i in 0..30 {
        let (f, f2) = (random_fn(&mut rng, &ctx), random_fn(&mut rng, &ctx));
        let g = &series[i % 10];
        let lhs = act(&f.multiply(&f2), g).map_err(|e| e.to_string())?;
        let rhs = act(&f, &act(&f2, g).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("pair {i}: {f:?} / {f2:?}"))?;
        for n in 0..=60usize {
            let expected = &(&f.eval_at(n as i128) * &f2.eval_at(n as i128)) * g.coeff(n);
            ensure(*lhs.coeff(n) == expected, || format!("pair {i}, coefficient {n} vs f(n) f'(n) a_n"))?;
        }
    }
    Ok("30 pairs on 10 series, plus act(1, g) = g".into())
}

fn character_amice_duality() -> Check {
    let ctx = desk(5);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let zetas: Vec<_> = (0..5).map(|e| CyclotomicElem::zeta_power(&ctx, 1, e)).collect();
    let one = CyclotomicElem::one(&ctx, 0);
    for c in 0..3i64 {
        let dirac = Dirac::new(PadicInt::from_int(&ctx, c));
        let amice = dirac.amice(4);
        for zeta in &zetas {
            let direct = eval_at_character(&dirac, zeta).map_err(|e| e.to_string())?;
            let transform = amice.amice_at_character(zeta).map_err(|e| e.to_string())?;
            ensure(direct == transform && direct == zeta.pow(c as u64), || format!("Dirac {c} at {zeta}"))?;
        }
    }
    let modulus = 5i128.pow(12);
    for i in 0..10 {
        let len = rng.gen_range(1..=10);
        let b: Vec<_> = (0..len).map(|_| CyclotomicElem::from_padic(PadicInt::from_i128(&ctx, rng.gen_range(0..modulus)))).collect();
        let mu = AmiceSeries::new(&ctx, b.clone(), AmiceTail::Zero);
        for zeta in &zetas {
            let t = zeta - &one;
            let mut oracle = CyclotomicElem::zero(&ctx, 1);
            let mut power = one.clone();
            for bk in &b {
                oracle = &oracle + &(bk * &power);
                power = &power * &t;
            }
            let direct = eval_at_character(&mu, zeta).map_err(|e| e.to_string())?;
            let transform = mu.amice_at_character(zeta).map_err(|e| e.to_string())?;
            ensure(direct == oracle && transform == oracle, || format!("random Amice series {i} at {zeta}"))?;
        }
    }
    Ok("Dirac 0, 1, 2 and 10 random series at all 5th roots of unity".into())
}

fn derivative_shadow() -> Check {
    let ctx = desk(7);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let actx = ActionContext::new(ctx, 2);
    for i in 0..20 {
        let g = random_series(&mut rng, &ctx);
        let d = derivative_check(&g);
        for n in 0..=60usize {
            let expected = *g.coeff(n) * PadicInt::from_int(&ctx, n as i64);
            ensure(d.coeff(n).b == expected && d.coeff(n).a == *g.coeff(n), || format!("series {i}, coefficient {n}"))?;
        }
        ensure(d.map_indexed(|_, x| x.b) == g.theta(), || format!("series {i}: eps part != theta"))?;
        let zeta = CyclotomicElem::zeta(&ctx, 1);
        let twisted = act_character(&actx, &zeta, &g.to_cyclo()).map_err(|e| e.to_string())?;
        ensure(*twisted.coeff(8) == &zeta * g.to_cyclo().coeff(8), || "zeta^8 = zeta for p = 7".into())?;
    }
    Ok("20 random series at p = 7".into())
}

fn kummer_brute_force() -> Check {
    let mut summary = Vec::new();
    for (p, k) in [(3u64, 1u32), (5, 1), (3, 2)] {
        let base = KummerBase::new(p, k, 2 * k, 6).map_err(|e| e.to_string())?;
        let order = p.pow(k);
        let elements: Vec<KummerElement> = base.elements().collect();
        let size = elements.len();
        ensure(size as u64 == order * order, || format!("({p},{k}): {size} elements"))?;
        let table = cayley_table(&base);
        let e = KummerElement::identity(&base).index();
        for x in 0..size {
            ensure(table[e][x] == x && table[x][e] == x, || format!("({p},{k}): identity at {x}"))?;
            ensure(table[x].iter().filter(|&&z| z == e).count() == 1, || format!("({p},{k}): inverse of {x}"))?;
            for y in 0..size {
                for z in 0..size {
                    ensure(table[table[x][y]][z] == table[x][table[y][z]], || format!("({p},{k}): associativity"))?;
                }
            }
        }
        // (Z/p^k)^2 is the abelian group with exactly p^{2i} elements killed by p^i, i <= k
        for i in 0..=k {
            let killed = (0..size)
                .filter(|&x| (0..p.pow(i)).fold(e, |acc, _| table[acc][x]) == e)
                .count();
            ensure(killed as u64 == p.pow(2 * i), || format!("({p},{k}): {killed} elements of order dividing p^{i}"))?;
        }
        ensure((0..size).all(|x| (0..size).all(|y| table[x][y] == table[y][x])), || "commutativity".into())?;
        for x in &elements {
            let left_trivial = elements.iter().all(|y| kummer_pair(x, y).unwrap() == 0);
            let right_trivial = elements.iter().all(|y| kummer_pair(y, x).unwrap() == 0);
            let is_identity = x.a == 0 && x.j == 0;
            ensure(left_trivial == is_identity && right_trivial == is_identity, || format!("({p},{k}): pairing kernel at {x:?}"))?;
        }
        let (g, gd) = (KummerGroup::standard(base), KummerGroup::inverted(base));
        let law = |x: &KummerElement, y: &KummerElement| kummer_mul(x, y).unwrap();
        for x in &elements {
            for y in &elements {
                ensure(g.law_matches_ring(law, x, y).unwrap(), || format!("({p},{k}): ring product {x:?} {y:?}"))?;
                let closed = (x.j * y.a + y.j * x.a) % order;
                ensure(kummer_pair(x, y).unwrap() == closed, || "closed pairing".into())?;
                ensure(realized_pairing(&g, &gd, x, y) == Some(closed), || format!("({p},{k}): realized pairing {x:?} {y:?}"))?;
            }
        }
        summary.push(format!("({p},{k}): {size}"));
    }
    Ok(format!("exhaustive tables {}", summary.join(", ")))
}

fn serre_tate() -> Check {
    let mut runs = 0;
    for (p, k) in [(3u64, 1u32), (3, 2), (5, 1)] {
        let ctx = PadicContext::new(p, 6, 1).unwrap();
        let order = p.pow(k);
        for u in (1..order).filter(|u| u % p != 0) {
            let zeta = CyclotomicElem::zeta_power(&ctx, k, u as i128);
            let report = serre_tate_action_check(&zeta);
            ensure(report.passed, || format!("({p},{k}), zeta^{u}: {report:?}"))?;
            let corrupted = serre_tate_action_check_with(&zeta, |x, y| {
                let carried = x.a + y.a >= order;
                KummerElement { a: (x.a + y.a) % order, j: (x.j + y.j + carried as u64) % order, ..*x }
            });
            ensure(!corrupted.passed && corrupted.counterexample.is_some(), || format!("({p},{k}): corrupted law passed"))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} roots of exact order p^k pass; corrupted carrying fails each time"))
}

fn lvalue_consistency() -> Check {
    let ctx = desk(5);
    let a = PadicInt::from_int(&ctx, 2);
    let mu = EisensteinMeasure::new(&ctx, &a, 3).map_err(|e| e.to_string())?;
    let trivial = UnitCharacter::trivial(&ctx);
    let l = two_variable_l(&mu, &trivial, &trivial).map_err(|e| e.to_string())?;

    let units = ContinuousFn::step(&ctx, 1, &[0, 1, 1, 1, 1]).unwrap();
    let inner = eisenstein_eval(&ctx, &a, &units).map_err(|e| e.to_string())?;
    let nu = act(&units, &inner).map_err(|e| e.to_string())?;
    let factor = CyclotomicElem::from_int(&ctx, 1 - 2);
    ensure(l.factor == factor, || format!("factor {}", l.factor))?;
    ensure(l.nu == nu, || format!("nu differs at {:?}", l.nu.first_disagreement(&nu)))?;
    ensure(l.series.scale(&factor) == nu, || "factor * series != nu".into())?;
    for n in 0..=60u64 {
        let expected = if n % 5 == 0 { BigInt::zero() } else { 2 * sigma_oracle(0, n) };
        let got = padic_coeff(&l.series, n as usize)?;
        ensure(agrees_with(&got, &(int_residue(&expected, 5, 12), 12), 5), || format!("coefficient {n}"))?;
    }
    ensure(l.constant.is_zero(), || "constant term".into())?;
    Ok("two-variable series equals act(1_units, mu(1_units)) / (1 - a)".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("Eisenstein moments", eisenstein_moments),
        ("regularized constant terms", regularized_constants),
        ("Kummer congruence", kummer_congruence),
        ("convolution theorem", convolution_theorem),
        ("Phi identity", phi_identity),
        ("algebra action laws", action_laws),
        ("character/Amice duality", character_amice_duality),
        ("derivative shadow", derivative_shadow),
        ("Kummer brute force", kummer_brute_force),
        ("Serre-Tate action check", serre_tate),
        ("L-value consistency", lvalue_consistency),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(reason) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {reason}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
