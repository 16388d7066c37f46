//! Shipping criteria, checked end to end against independent oracles
//! and full-scale campaigns. Each criterion prints one ACCEPTANCE line;
//! the test fails if any criterion does, and the line carries the
//! analysis for anything that fell short.

use std::error::Error as StdError;
use std::f64::consts::PI;
use std::sync::LazyLock;
use std::time::Instant;

use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use rand_sts::campaign::{
    pop_uniformity, render_report, run_campaign, threshold, CampaignConfig, CampaignReport,
    ReportFormat, ReportRow, APPENDIX_LABELS,
};
use rand_sts::generators::GeneratorSpec;
use rand_sts::special::{erf, erfc, igamc, normal_cdf, Probability};
use rand_sts::suite::{
    berlekamp_massey, dft_magnitudes, disjoint_match_count, gf2_rank, monobit,
    overlapping_match_count, run_test, serial, walk_stats, Template, TestParams,
};
use rand_sts::{BitSequence, TestId};

type Check = Result<String, Box<dyn StdError>>;

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("1 threshold exactness", criterion_1),
        ("2 special-function accuracy", criterion_2),
        ("3 serial-monobit identity", criterion_3),
        ("4 oracle equivalence", criterion_4),
        ("5 designed-input verdicts", criterion_5),
        ("6 desk-scale campaign", criterion_6),
        ("7 discriminative power", criterion_7),
        ("8 report fidelity", criterion_8),
        ("9 uniformity machinery", criterion_9),
    ];
    let mut failed: Vec<&str> = Vec::new();
    for (label, criterion) in criteria {
        match criterion() {
            Ok(note) if note.is_empty() => println!("ACCEPTANCE {label}: PASS"),
            Ok(note) => println!("ACCEPTANCE {label}: PASS ({note})"),
            Err(e) => {
                println!("ACCEPTANCE {label}: FAIL ({e})");
                failed.push(label);
            }
        }
    }
    assert!(
        failed.is_empty(),
        "criteria failed: {}",
        failed.join("; ")
    );
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), Box<dyn StdError>> {
    if cond {
        Ok(())
    } else {
        Err(msg.into().into())
    }
}

/// Relative closeness with a floor: values that both sit at the edge of
/// f64 underflow compare equal.
fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    if a == b {
        return true;
    }
    let scale = a.abs().max(b.abs());
    scale < 1e-290 || (a - b).abs() <= tol * scale
}

fn random_bits(rng: &mut StdRng, n: usize) -> String {
    (0..n).map(|_| if rng.gen::<bool>() { '1' } else { '0' }).collect()
}

// Published three-sigma proportion thresholds at the default
// significance level.
fn criterion_1() -> Check {
    for (count, expect) in [(300usize, "0.972766"), (2400, "0.983907"), (5400, "0.985938")] {
        let got = format!("{:.6}", threshold(0.01, count)?);
        ensure(
            got == expect,
            format!("threshold(0.01, {count}) = {got}, published value {expect}"),
        )?;
    }
    Ok(String::new())
}

// Positive half of the 32-point Gauss-Legendre rule on [-1, 1],
// mirrored at evaluation time.
const GL_NODES: [f64; 16] = [
    0.04830766568773831,
    0.1444719615827965,
    0.23928736225213706,
    0.33186860228212767,
    0.42135127613063533,
    0.5068999089322294,
    0.5877157572407623,
    0.6630442669302152,
    0.7321821187402897,
    0.7944837959679424,
    0.84936761373257,
    0.8963211557660522,
    0.9349060759377397,
    0.9647622555875064,
    0.9856115115452684,
    0.9972638618494816,
];
const GL_WEIGHTS: [f64; 16] = [
    0.09654008851472781,
    0.09563872007927483,
    0.09384439908080457,
    0.09117387869576386,
    0.08765209300440391,
    0.08331192422694685,
    0.07819389578707031,
    0.07234579410884845,
    0.06582222277636175,
    0.058684093478535704,
    0.050998059262376244,
    0.042835898022226426,
    0.034273862913021626,
    0.025392065309262427,
    0.016274394730905965,
    0.007018610009469298,
];

fn gauss_panel(f: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let c = 0.5 * (hi + lo);
    let h = 0.5 * (hi - lo);
    let mut sum = 0.0;
    for i in 0..16 {
        sum += GL_WEIGHTS[i] * (f(c + h * GL_NODES[i]) + f(c - h * GL_NODES[i]));
    }
    sum * h
}

fn quadrature(f: impl Fn(f64) -> f64, lo: f64, hi: f64, panels: usize) -> f64 {
    let w = (hi - lo) / panels as f64;
    (0..panels)
        .map(|i| gauss_panel(&f, lo + i as f64 * w, lo + (i + 1) as f64 * w))
        .sum()
}

/// Alternating Maclaurin series for erf, independent of the library's
/// nonalternating branch; good to ~1e-13 for |x| <= 2.
fn erf_series_oracle(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    for k in 1..200 {
        let kf = k as f64;
        term *= -x2 / kf;
        let add = term / (2.0 * kf + 1.0);
        sum += add;
        if add.abs() < 1e-18 * sum.abs().max(1e-30) {
            break;
        }
    }
    sum * 2.0 / PI.sqrt()
}

/// erfc by direct quadrature of the Gaussian tail for x >= 2, by the
/// series complement elsewhere.
fn erfc_oracle(x: f64) -> f64 {
    if x >= 2.0 {
        quadrature(|t| (-t * t).exp(), x, x + 10.0, 40) * 2.0 / PI.sqrt()
    } else if x <= -2.0 {
        2.0 - erfc_oracle(-x)
    } else {
        1.0 - erf_series_oracle(x)
    }
}

fn erf_oracle(x: f64) -> f64 {
    if x.abs() < 2.0 {
        erf_series_oracle(x)
    } else if x > 0.0 {
        1.0 - erfc_oracle(x)
    } else {
        erfc_oracle(-x) - 1.0
    }
}

/// Stirling series with Bernoulli correction terms; arguments below 12
/// are lifted by ln G(a) = ln G(a+1) - ln a.
fn ln_gamma_oracle(a: f64) -> f64 {
    if a < 12.0 {
        return ln_gamma_oracle(a + 1.0) - a.ln();
    }
    const COEF: [f64; 8] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
        -3617.0 / 122_400.0,
    ];
    let inv = 1.0 / a;
    let inv2 = inv * inv;
    let mut pow = inv;
    let mut series = 0.0;
    for c in COEF {
        series += c * pow;
        pow *= inv2;
    }
    (a - 0.5) * a.ln() - a + 0.5 * (2.0 * PI).ln() + series
}

/// Regularized upper gamma tail by quadrature of the log-normalized
/// density, which stays bounded for every shape.
fn igamc_oracle(a: f64, x: f64) -> f64 {
    let lg = ln_gamma_oracle(a);
    let g = move |t: f64| {
        let e = (a - 1.0) * t.ln() - t - lg;
        if e > -745.0 {
            e.exp()
        } else {
            0.0
        }
    };
    let hi = (a + 45.0 * a.sqrt().max(1.0)).max(x) + 60.0;
    quadrature(g, x, hi, 600)
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x0202);
    for _ in 0..300 {
        let x = rng.gen_range(-6.0..6.0);
        let got = erf(x)?;
        let want = erf_oracle(x);
        ensure(
            rel_close(got, want, 1e-10),
            format!("erf({x}) = {got:e}, oracle {want:e}"),
        )?;
    }
    for _ in 0..300 {
        let x = rng.gen_range(-6.0..25.0);
        let got = erfc(x)?;
        let want = erfc_oracle(x);
        ensure(
            rel_close(got, want, 1e-10),
            format!("erfc({x}) = {got:e}, oracle {want:e}"),
        )?;
    }
    for _ in 0..300 {
        let z = rng.gen_range(-10.0..10.0);
        let got = normal_cdf(z)?;
        let want = 0.5 * erfc_oracle(-z / 2.0f64.sqrt());
        ensure(
            rel_close(got, want, 1e-10),
            format!("normal_cdf({z}) = {got:e}, oracle {want:e}"),
        )?;
    }
    for a in [0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.5, 8.0, 30.5, 128.0, 2048.0, 16384.0] {
        for u in [0.25, 0.5, 0.8, 0.95, 1.0, 1.05, 1.25, 2.0, 3.0] {
            let x = a * u;
            let got = igamc(a, x)?;
            let want = igamc_oracle(a, x);
            ensure(
                rel_close(got, want, 1e-10),
                format!("igamc({a}, {x}) = {got:e}, oracle {want:e}"),
            )?;
        }
    }
    for _ in 0..1000 {
        let x = rng.gen_range(1e-6..200.0);
        let lhs = igamc(1.0, x)?;
        let rhs = (-x).exp();
        ensure(
            rel_close(lhs, rhs, 1e-10),
            format!("igamc(1, {x}) = {lhs:e} against exp(-x) = {rhs:e}"),
        )?;
        let lhs = igamc(0.5, x)?;
        let rhs = erfc(x.sqrt())?;
        ensure(
            rel_close(lhs, rhs, 1e-10),
            format!("igamc(0.5, {x}) = {lhs:e} against erfc(sqrt x) = {rhs:e}"),
        )?;
    }
    Ok(format!("{:.2}s", start.elapsed().as_secs_f64()))
}

fn criterion_3() -> Check {
    let mut rng = StdRng::seed_from_u64(0x0303);
    for i in 0..100 {
        let seq = BitSequence::from_ascii(&random_bits(&mut rng, 128))?;
        let mono = monobit(&seq)?.p_values[0].value();
        let ser = serial(&seq, Some(1))?.p_values[0].value();
        ensure(
            rel_close(mono, ser, 1e-10),
            format!("sequence {i}: monobit P = {mono:e}, serial(m=1) first P = {ser:e}"),
        )?;
    }
    Ok(String::new())
}

/// Rank over GF(2) as the log2 of the span size, enumerated from all
/// row subsets.
fn span_rank(rows: &[u64]) -> usize {
    let mut span = std::collections::BTreeSet::new();
    for mask in 0u32..(1 << rows.len()) {
        let mut acc = 0u64;
        for (i, &row) in rows.iter().enumerate() {
            if mask >> i & 1 == 1 {
                acc ^= row;
            }
        }
        span.insert(acc);
    }
    span.len().trailing_zeros() as usize
}

/// Smallest L for which some L-tap feedback register reproduces the
/// block, found by trying every tap mask.
fn min_lfsr_len(bits: &[u8]) -> usize {
    let n = bits.len();
    for l in 0..n {
        'mask: for mask in 0u32..(1u32 << l) {
            for i in l..n {
                let mut acc = 0u8;
                for j in 0..l {
                    acc ^= (mask >> j & 1) as u8 & bits[i - 1 - j];
                }
                if acc != bits[i] {
                    continue 'mask;
                }
            }
            return l;
        }
    }
    n
}

/// Cycle and visit statistics recounted from an explicit list of
/// partial sums.
fn naive_walk(text: &str) -> (u64, [[u64; 6]; 8], [u64; 18]) {
    let mut sums = Vec::new();
    let mut s = 0i64;
    for b in text.bytes() {
        s += if b == b'1' { 1 } else { -1 };
        sums.push(s);
    }
    let mut cycles: Vec<Vec<i64>> = Vec::new();
    let mut current = Vec::new();
    for &v in &sums {
        current.push(v);
        if v == 0 {
            cycles.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        cycles.push(current);
    }
    let mut nu = [[0u64; 6]; 8];
    let mut xi = [0u64; 18];
    for cycle in &cycles {
        for (idx, state) in [-4i64, -3, -2, -1, 1, 2, 3, 4].iter().enumerate() {
            let visits = cycle.iter().filter(|&&v| v == *state).count().min(5);
            nu[idx][visits] += 1;
        }
    }
    for (idx, state) in (-9i64..=9).filter(|&s| s != 0).enumerate() {
        xi[idx] = sums.iter().filter(|&&v| v == state).count() as u64;
    }
    (cycles.len() as u64, nu, xi)
}

fn criterion_4() -> Check {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x0404);

    for i in 0..500 {
        let height = rng.gen_range(1..=8usize);
        let cols = rng.gen_range(1..=8usize);
        let rows: Vec<u64> = (0..height)
            .map(|_| rng.gen::<u64>() & ((1u64 << cols) - 1))
            .collect();
        let got = gf2_rank(&rows, cols);
        let want = span_rank(&rows);
        ensure(
            got == want,
            format!("matrix {i} ({height}x{cols}): rank {got}, exhaustive span says {want}"),
        )?;
    }

    for i in 0..200 {
        let bits: Vec<u8> = (0..16).map(|_| rng.gen_range(0..=1u8)).collect();
        let (got, _) = berlekamp_massey(&bits);
        let want = min_lfsr_len(&bits);
        ensure(
            got == want,
            format!("block {i} {bits:?}: complexity {got}, exhaustive search says {want}"),
        )?;
    }

    for i in 0..500 {
        let n = rng.gen_range(4..=64usize);
        let text = random_bits(&mut rng, n);
        let m = rng.gen_range(1..=9.min(n));
        let tpl_text = random_bits(&mut rng, m);
        let seq = BitSequence::from_ascii(&text)?;
        let tpl = Template::from_ascii(&tpl_text)?;
        let bits: Vec<u8> = text.bytes().map(|b| b - b'0').collect();
        let pattern: Vec<u8> = tpl_text.bytes().map(|b| b - b'0').collect();
        let mut overlapping = 0u64;
        for j in 0..=n - m {
            if bits[j..j + m] == pattern[..] {
                overlapping += 1;
            }
        }
        let mut disjoint = 0u64;
        let mut j = 0;
        while j + m <= n {
            if bits[j..j + m] == pattern[..] {
                disjoint += 1;
                j += m;
            } else {
                j += 1;
            }
        }
        ensure(
            overlapping_match_count(&seq, &tpl) == overlapping,
            format!("string {i}: overlapping count mismatch for {tpl_text} in {text}"),
        )?;
        ensure(
            disjoint_match_count(&seq, &tpl) == disjoint,
            format!("string {i}: disjoint count mismatch for {tpl_text} in {text}"),
        )?;
    }

    for i in 0..3 {
        let seq = BitSequence::from_ascii(&random_bits(&mut rng, 256))?;
        let mags = dft_magnitudes(&seq)?;
        ensure(mags.len() == 128, format!("expected 128 magnitudes, got {}", mags.len()))?;
        let signed: Vec<f64> = seq.to_signed().iter().map(|&v| v as f64).collect();
        for (j, &got) in mags.iter().enumerate() {
            let mut re = 0.0;
            let mut im = 0.0;
            for (k, &v) in signed.iter().enumerate() {
                let angle = -2.0 * PI * (j as f64) * (k as f64) / 256.0;
                re += v * angle.cos();
                im += v * angle.sin();
            }
            let want = re.hypot(im);
            ensure(
                (got - want).abs() <= 1e-6 * want.max(1.0),
                format!("sequence {i} bin {j}: magnitude {got}, direct sum {want}"),
            )?;
        }
    }

    for i in 0..200 {
        let text = random_bits(&mut rng, 32);
        let seq = BitSequence::from_ascii(&text)?;
        let got = walk_stats(&seq);
        let (j, nu, xi) = naive_walk(&text);
        ensure(
            got.j == j && got.nu == nu && got.xi == xi,
            format!("walk {i} ({text}): cycle/visit statistics disagree with the recount"),
        )?;
    }

    Ok(format!("{:.2}s", start.elapsed().as_secs_f64()))
}

fn criterion_5() -> Check {
    let start = Instant::now();
    let n = 100_000;
    let params = TestParams::default();
    let alternating = BitSequence::from_ascii(&"01".repeat(n / 2))?;
    let constant = BitSequence::from_ascii(&"1".repeat(n))?;

    for id in [1u8, 2, 13] {
        let result = run_test(&alternating, TestId::new(id)?, &params)?;
        ensure(result.applicable, format!("test {id} inapplicable on the alternating input"))?;
        for p in &result.p_values {
            ensure(
                p.value() > 0.9,
                format!("alternating input, test {id}: P = {:e} is not above 0.9", p.value()),
            )?;
        }
    }
    for id in [3u8, 11, 12] {
        let result = run_test(&alternating, TestId::new(id)?, &params)?;
        ensure(result.applicable, format!("test {id} inapplicable on the alternating input"))?;
        for p in &result.p_values {
            ensure(
                p.value() < 1e-6,
                format!("alternating input, test {id}: P = {:e} is not below 1e-6", p.value()),
            )?;
        }
    }
    for id in [1u8, 2, 4, 5] {
        let result = run_test(&constant, TestId::new(id)?, &params)?;
        for p in &result.p_values {
            ensure(
                p.value() < 1e-6,
                format!("constant input, test {id}: P = {:e} is not below 1e-6", p.value()),
            )?;
        }
    }
    let gate = run_test(&constant, TestId::new(3)?, &params)?;
    ensure(!gate.applicable, "the constant input should trip the runs-test precondition")?;
    Ok(format!("{:.2}s", start.elapsed().as_secs_f64()))
}

// 512-bit Blum primes; the start value is squared per sequence index,
// so each campaign sequence enters its own squaring orbit.
const BBS_P: &[u8] = b"7182311150807432884602951414122050951080054537939716148413010730667592989503830974243235626149200725147308611315489824275541469760829171090142834376951283";
const BBS_Q: &[u8] = b"12335064952381316979949514616144231816977703508803360909176423335585530202199888838530945381163335706230093946064098758391643256752960767568010713916171551";
const BBS_X0: &[u8] = b"1855803611973864833401668876101195966904058081359312046099690244086765351150974700983264115682123837343806136291564759990";

static BBS_REPORT: LazyLock<Result<CampaignReport, String>> = LazyLock::new(|| {
    let config = CampaignConfig {
        generator: GeneratorSpec::Bbs {
            p: BigUint::parse_bytes(BBS_P, 10).expect("prime literal"),
            q: BigUint::parse_bytes(BBS_Q, 10).expect("prime literal"),
            x0: BigUint::parse_bytes(BBS_X0, 10).expect("seed literal"),
        },
        sequences: 100,
        ..CampaignConfig::default()
    };
    run_campaign(&config, None).map_err(|e| e.to_string())
});

static KNUTH_REPORT: LazyLock<Result<CampaignReport, String>> = LazyLock::new(|| {
    let config = CampaignConfig {
        generator: GeneratorSpec::Knuth { seed: 1, bits_per_word: 32 },
        sequences: 100,
        ..CampaignConfig::default()
    };
    run_campaign(&config, None).map_err(|e| e.to_string())
});

fn shortfall(row: &ReportRow) -> String {
    format!(
        "test {} ({}) at {:.6} against {:.6}",
        row.test, row.name, row.observed_proportion, row.expected_proportion
    )
}

fn criterion_6() -> Check {
    let start = Instant::now();
    let report = BBS_REPORT.as_ref().map_err(|e| e.clone())?;
    let below: Vec<&ReportRow> = report.rows.iter().filter(|r| !r.proportion_success).collect();
    let unexpected: Vec<String> = below
        .iter()
        .filter(|r| r.test <= 13)
        .map(|&r| shortfall(r))
        .collect();
    ensure(
        unexpected.is_empty(),
        format!(
            "unexpected shortfalls from an ideal source: {}",
            unexpected.join("; ")
        ),
    )?;
    if below.len() <= 1 {
        return Ok(format!(
            "all 15 proportions clear threshold{}{}, {:.0}s",
            if below.is_empty() { "" } else { " except " },
            below.iter().map(|&r| shortfall(r)).collect::<Vec<_>>().join("; "),
            start.elapsed().as_secs_f64(),
        ));
    }
    let listing: Vec<String> = below.iter().map(|&r| shortfall(r)).collect();
    Err(format!(
        "{} tests sit below threshold where the tolerance is one: {}. The shortfall is \
         structural, not a generator defect: at one million bits roughly 38 percent of ideal \
         sequences complete fewer than 500 zero crossings, the excursion tests then report \
         zero-filled P-values, and the campaign pools those as failures, capping the attainable \
         proportion near 0.62 against thresholds above 0.97. Every other test, including the \
         overlapping-template test, clears its threshold here.",
        below.len(),
        listing.join("; "),
    )
    .into())
}

fn criterion_7() -> Check {
    let report = KNUTH_REPORT.as_ref().map_err(|e| e.clone())?;
    let flagged: Vec<String> = report
        .rows
        .iter()
        .filter(|r| [11, 14, 15].contains(&r.test))
        .filter(|r| !r.proportion_success || r.pop.is_some_and(|p| p < 0.0001))
        .map(|r| format!("{} ({})", r.test, r.name))
        .collect();
    ensure(
        !flagged.is_empty(),
        "none of tests 11, 14, 15 showed a proportion or uniformity failure on the truncated \
         congruential source",
    )?;
    Ok(format!("flagged {}", flagged.join(", ")))
}

fn is_fixed6(s: &str) -> bool {
    match s.split_once('.') {
        Some((whole, frac)) => {
            !whole.is_empty()
                && whole.bytes().all(|b| b.is_ascii_digit())
                && frac.len() == 6
                && frac.bytes().all(|b| b.is_ascii_digit())
        }
        None => false,
    }
}

fn is_sci6(s: &str) -> bool {
    let b = s.as_bytes();
    b.len() >= 12
        && b[0].is_ascii_digit()
        && b[1] == b'.'
        && b[2..8].iter().all(u8::is_ascii_digit)
        && b[8] == b'e'
        && (b[9] == b'+' || b[9] == b'-')
        && b[10..].iter().all(u8::is_ascii_digit)
}

fn criterion_8() -> Check {
    let report = KNUTH_REPORT.as_ref().map_err(|e| e.clone())?;
    let text = render_report(report, ReportFormat::Tsv);
    let (hist, verdicts) = text
        .split_once("\n\n")
        .ok_or("report does not render as two tables")?;

    let mut lines = hist.lines();
    let header: Vec<&str> = lines.next().ok_or("empty histogram table")?.split('\t').collect();
    ensure(header.len() == 14, format!("histogram header has {} columns", header.len()))?;
    ensure(
        header[2..13] == APPENDIX_LABELS,
        format!("histogram interval labels read {:?}", &header[2..13]),
    )?;
    let mut rows = 0;
    for line in lines {
        rows += 1;
        let cells: Vec<&str> = line.split('\t').collect();
        let test: u8 = cells[0].parse()?;
        let counts: Vec<u64> = cells[2..13]
            .iter()
            .map(|c| c.parse::<u64>())
            .collect::<Result<_, _>>()?;
        let total: u64 = cells[13].parse()?;
        let expected = (report.sequences * TestId::new(test)?.arity()) as u64;
        ensure(
            counts.iter().sum::<u64>() == total && total == expected,
            format!(
                "test {test}: histogram sums to {} with total column {total}, m times arity is {expected}",
                counts.iter().sum::<u64>()
            ),
        )?;
    }
    ensure(rows == 15, format!("histogram table has {rows} rows"))?;

    let mut vlines = verdicts.trim_end().lines();
    let vheader: Vec<&str> = vlines.next().ok_or("empty verdict table")?.split('\t').collect();
    ensure(
        vheader == ["test", "name", "length", "expected", "observed", "proportion", "pop", "uniformity"],
        format!("verdict header reads {vheader:?}"),
    )?;
    let mut rows = 0;
    for line in vlines {
        rows += 1;
        let cells: Vec<&str> = line.split('\t').collect();
        ensure(cells.len() == 8, format!("verdict row has {} columns", cells.len()))?;
        ensure(
            is_fixed6(cells[3]) && is_fixed6(cells[4]),
            format!("proportions {:?} / {:?} are not 6-decimal fixed", cells[3], cells[4]),
        )?;
        ensure(
            cells[5] == "Success" || cells[5] == "Unsuccess",
            format!("status column reads {:?}", cells[5]),
        )?;
        ensure(
            cells[6] == "-" || is_sci6(cells[6]),
            format!("pop column {:?} is not 6-decimal scientific", cells[6]),
        )?;
        ensure(
            ["Uniform", "Non-uniform", "-"].contains(&cells[7]),
            format!("uniformity column reads {:?}", cells[7]),
        )?;
    }
    ensure(rows == 15, format!("verdict table has {rows} rows"))?;
    Ok(String::new())
}

fn criterion_9() -> Check {
    let mut rng = StdRng::seed_from_u64(0x0909);
    let mut uniform_hits = 0;
    for _ in 0..100 {
        let draws: Vec<Probability> = (0..300)
            .map(|_| Probability::new(rng.gen::<f64>()))
            .collect::<Result<_, _>>()?;
        if pop_uniformity(&draws)?.uniform {
            uniform_hits += 1;
        }
    }
    ensure(
        uniform_hits >= 99,
        format!("a true uniform source was judged Uniform only {uniform_hits} of 100 times"),
    )?;
    let spike = vec![Probability::new(0.5)?; 300];
    ensure(
        !pop_uniformity(&spike)?.uniform,
        "300 copies of P = 0.5 should be judged Non-uniform",
    )?;
    Ok(format!("uniform verdicts {uniform_hits}/100"))
}
