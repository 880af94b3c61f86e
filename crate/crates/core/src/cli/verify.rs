//! Re-checks the witnesses recorded in a report. Nothing here searches: each
//! check evaluates a formula or a single recorded specialization.

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{de::DeserializeOwned, Serialize};
use serde_json::Value;

use super::{group_from_file, parse_poly, with_target, CliError, GeneratorsFile};
use crate::ff::{poly, FiniteField, Gf};
use crate::galois::{EquivalenceReport, KummerMonodromy, OrbitType, RamificationProfile};
use crate::groups::{
    self, Classification, EmbeddingCertificate, EmbeddingVerdict, ObstructionReport, Verdict, Zsigmondy,
};
use crate::linalg::Mat;
use crate::linpoly::LinPoly;
use crate::mrd::{MrdReport, RankCode};
use crate::scatter::{self, Budget, ScanReport, ScatterProfile, SpecializationKernel};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyOutcome {
    pub target: String,
    pub checks: Vec<Check>,
    pub valid: bool,
    /// Claims a witness cannot certify (e.g. "scattered", a universal statement).
    pub unwitnessed: Vec<String>,
}

#[derive(Default)]
struct Checks {
    checks: Vec<Check>,
    unwitnessed: Vec<String>,
    /// The verdict implied by the recorded data.
    verdict: bool,
}

impl Checks {
    fn push(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push(Check { name: name.into(), ok });
    }
}

fn field<T: DeserializeOwned>(v: &Value, key: &str) -> Result<T, CliError> {
    let x = v.get(key).ok_or_else(|| CliError::Invalid(format!("report lacks \"{key}\"")))?;
    serde_json::from_value(x.clone()).map_err(|e| CliError::Invalid(format!("\"{key}\": {e}")))
}

fn arg(v: &Value, key: &str) -> Result<usize, CliError> {
    field(&v["args"], key)
}

fn poly_of(v: &Value) -> Result<LinPoly, CliError> {
    parse_poly(v.get("poly").ok_or_else(|| CliError::Invalid("report lacks \"poly\"".into()))?)
}

fn pow(q: u64, e: usize) -> u128 {
    (q as u128).pow(e as u32)
}

/// Re-validates a report produced by any subcommand other than `verify`.
pub fn verify_report(v: &Value) -> Result<VerifyOutcome, CliError> {
    let target: String = field(v, "command")?;
    let affirmative: bool = field(v, "affirmative")?;
    let mut c = Checks::default();
    match target.as_str() {
        "check" => check(v, &mut c)?,
        "scan" => scan(v, &mut c)?,
        "orbits" => orbits(v, &mut c)?,
        "ramify" => ramify(v, &mut c)?,
        "kummer" => kummer(v, &mut c)?,
        "mrd" => mrd(v, &mut c)?,
        "groups orders" => orders(v, &mut c)?,
        "groups zsigmondy" => zsigmondy(v, &mut c)?,
        "groups classify" => classify(v, &mut c)?,
        "groups obstructions" => obstructions(v, &mut c)?,
        "groups embed-check" => embed_check(v, &mut c)?,
        other => return Err(CliError::Invalid(format!("cannot verify a \"{other}\" report"))),
    }
    let verdict = c.verdict;
    c.push("affirmative flag matches the recorded data", verdict == affirmative);
    let valid = c.checks.iter().all(|x| x.ok);
    Ok(VerifyOutcome { target, checks: c.checks, valid, unwitnessed: c.unwitnessed })
}

fn kernel(l: &LinPoly, m: usize, t: usize) -> Result<SpecializationKernel, CliError> {
    Ok(SpecializationKernel::new(l, m, t, Budget { max_specializations: u64::MAX })?)
}

fn check(v: &Value, c: &mut Checks) -> Result<(), CliError> {
    let (t, m) = (arg(v, "t")?, arg(v, "m")?);
    let l = with_target(&poly_of(v)?, m)?;
    let p: ScatterProfile = field(v, "report")?;
    c.push("histogram covers F_(q^nm)", p.total() as u128 == pow(l.q(), l.n() * m));
    c.push("max_dim is the top histogram key", p.histogram.keys().next_back() == Some(&p.max_dim));
    match p.witness {
        Some(s0) => {
            let k = kernel(&l, m, t)?;
            c.push(format!("kernel dimension at s0 = {s0} is {}", p.max_dim), s0 < k.size() && k.kernel_dim(s0) == p.max_dim);
        }
        None => {
            c.push("no witness only when max_dim ≤ 1", p.max_dim <= 1);
            c.unwitnessed.push("scattered: a statement about every s0".into());
        }
    }
    c.verdict = p.witness.is_none();
    Ok(())
}

fn scan(v: &Value, c: &mut Checks) -> Result<(), CliError> {
    let t = arg(v, "t")?;
    let l = poly_of(v)?;
    let r: ScanReport = field(v, "report")?;
    c.push("label", r.label == scatter::EVIDENCE_LABEL);
    for e in &r.entries {
        c.push(format!("m = {}: verdict matches max_dim", e.m), e.scattered == (e.max_dim <= 1) && e.scattered == e.witness.is_none());
        if let Some(s0) = e.witness {
            let lm = with_target(&l, e.m)?;
            let k = kernel(&lm, e.m, t)?;
            c.push(format!("m = {}: kernel dimension at s0 = {s0}", e.m), s0 < k.size() && k.kernel_dim(s0) == e.max_dim);
        }
    }
    c.unwitnessed.push("scattered entries: statements about every s0".into());
    c.verdict = true;
    Ok(())
}

fn orbits(v: &Value, c: &mut Checks) -> Result<(), CliError> {
    let (t, m) = (arg(v, "t")?, arg(v, "m")?);
    let l = with_target(&poly_of(v)?, m)?;
    let q = l.q();
    let k = kernel(&l, m, t)?;
    let d = scatter::scatter_degree(&l, t)?;
    if v["args"]["s0"].is_string() {
        let o: OrbitType = field(v, "report")?;
        let dim = k.kernel_dim(o.s0.code);
        if !o.ramified && !o.degenerate {
            c.push("fixed nonzero roots = q^dim - 1", o.fixed_nonzero() as u128 + 1 == pow(q, dim));
            c.push("degrees bounded by the splitting degree", o.degrees.iter().all(|&x| x as u128 <= pow(q, d)));
        }
        c.verdict = o.ramified || (o.fixed_nonzero() as u64) < q;
        return Ok(());
    }
    let r: EquivalenceReport = field(v, "report")?;
    c.push("every specialization listed", r.entries.len() as u64 == k.size());
    let mut ok = true;
    for e in &r.entries {
        ok &= e.s0 < k.size() && k.kernel_dim(e.s0) == e.kernel_dim;
        ok &= e.consistent == (e.fixed_nonzero as u128 + 1 == pow(q, e.kernel_dim));
    }
    c.push("recorded kernel dimensions", ok);
    let unram = || r.entries.iter().filter(|e| !e.ramified);
    c.push("consistency flag", r.consistent == unram().all(|e| e.consistent));
    c.push("orbit criterion flag", r.orbit_criterion == unram().all(|e| (e.fixed_nonzero as u64) < q));
    let scattered = r.entries.iter().all(|e| e.kernel_dim <= 1);
    c.push("scattered flag", r.scattered.is_none_or(|s| s == scattered));
    c.verdict = r.orbit_criterion && r.consistent;
    Ok(())
}

fn ramify(v: &Value, c: &mut Checks) -> Result<(), CliError> {
    let l = poly_of(v)?;
    let r: RamificationProfile = field(v, "report")?;
    let p = l.ctx().p();
    let d = r.r.max(r.t);
    c.push("degrees match the polynomial", r.r == l.lin_degree()? && r.q == l.q());
    c.push("total degree q^d - 1", r.total_degree as u128 == pow(r.q, d) - 1);
    c.push("segment lengths sum to q^d - 1", r.entries.iter().map(|s| s.length as u128).sum::<u128>() == pow(r.q, d) - 1);
    let mut ok = true;
    for s in &r.entries {
        ok &= s.slope_num.unsigned_abs().gcd(&s.slope_den) == 1;
        ok &= s.e == s.slope_den && s.e * s.multiplicity == s.length;
        ok &= s.wild == (s.e % p == 0) && s.q_divisible == (s.e % r.q == 0);
    }
    c.push("segments: e = slope denominator, e·multiplicity = length, wild and q-divisible flags", ok);
    c.push("any_q_divisible flag", r.any_q_divisible == r.entries.iter().any(|s| s.q_divisible));
    c.verdict = true;
    Ok(())
}

fn kummer(v: &Value, c: &mut Checks) -> Result<(), CliError> {
    let k: KummerMonodromy = field(v, "report")?;
    let g = k.t.gcd(&(k.n * k.m));
    let geometric = BigUint::from(k.q).pow(k.t as u32) - 1u32;
    c.push("|G_geom| = q^t - 1", k.geometric_order == geometric);
    c.push("constant field degree t / gcd(t, nm)", k.constant_field_degree == k.t / g);
    c.push("|G_arith| = |G_geom| · constant field degree", k.arithmetic_order == &geometric * k.constant_field_degree);
    c.push("scattered ⇔ gcd(t, nm) = 1", k.scattered == (g == 1));
    c.push("groups differ ⇔ constant field degree > 1", k.groups_differ == (k.constant_field_degree > 1));
    c.verdict = k.scattered;
    Ok(())
}

fn mrd(v: &Value, c: &mut Checks) -> Result<(), CliError> {
    let l = poly_of(v)?;
    let r: MrdReport = field(v, "report")?;
    let code = RankCode::new(&l)?;
    let base = Gf::with_order(l.q())?;
    let (a, b) = r.witness;
    c.push("classes = q^n + 1", r.classes as u128 == pow(r.q, r.n) + 1);
    c.push(format!("rank of the codeword ({a}, {b})"), (a, b) != (0, 0) && code.codeword(a, b)?.rank(&base) == r.min_rank);
    c.push("is_mrd ⇔ min_rank = n - 1", r.is_mrd == (r.min_rank + 1 == r.n));
    if r.is_mrd {
        c.unwitnessed.push("min_rank is a minimum over every codeword".into());
    }
    c.verdict = r.is_mrd;
    Ok(())
}

fn product(q: &BigUint, ks: impl Iterator<Item = u32>) -> BigUint {
    ks.fold(BigUint::from(1u32), |acc, k| acc * (q.pow(k) - 1u32))
}

fn orders(v: &Value, c: &mut Checks) -> Result<(), CliError> {
    let (d, q) = (arg(v, "d")?, field::<u64>(&v["args"], "q")?);
    let r = &v["report"];
    let qb = BigUint::from(q);
    let d32 = d as u32;
    let gl = qb.pow(d32 * (d32 - 1) / 2) * product(&qb, 1..=d32);
    let sl = &gl / (&qb - 1u32);
    let gammal1 = BigUint::from(d) * (qb.pow(d32) - 1u32);
    let same = |key: &str, x: &BigUint| r[key].as_str() == Some(x.to_string().as_str());
    c.push("|GL_d|", same("gl", &gl));
    c.push("|SL_d|", same("sl", &sl));
    c.push("|ΓL_1|", same("gammal1", &gammal1));
    if d % 2 == 0 {
        let h = d32 / 2;
        let sp = qb.pow(h * h) * product(&qb, (1..=h).map(|i| 2 * i));
        c.push("|Sp_d|", same("sp", &sp));
    }
    c.verdict = true;
    Ok(())
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| !n.is_multiple_of(k))
}

fn order_mod(b: u64, r: u64) -> Option<u64> {
    let b = b % r;
    let mut x = b;
    for k in 1..r {
        if x == 1 {
            return Some(k);
        }
        x = (x as u128 * b as u128 % r as u128) as u64;
    }
    None
}

fn zsigmondy(v: &Value, c: &mut Checks) -> Result<(), CliError> {
    let (b, n) = (field::<u64>(&v["args"], "b")?, arg(v, "n")?);
    let z: Zsigmondy = field(v, "report")?;
    match z {
        Zsigmondy::Prime { r } => {
            c.push(format!("{r} is prime"), is_prime(r));
            c.push(format!("ord_{r}({b}) = {n}"), order_mod(b, r) == Some(n as u64));
            c.verdict = true;
        }
        Zsigmondy::Exception => {
            let listed = (b, n) == (2, 1) || (b, n) == (2, 6) || n == 2 && (b + 1).is_power_of_two();
            c.push("listed exception", listed);
            c.verdict = false;
        }
    }
    Ok(())
}

fn classify(v: &Value, c: &mut Checks) -> Result<(), CliError> {
    let file: GeneratorsFile = field(v, "generators")?;
    let class: Classification = field(v, "report")?;
    let g = group_from_file(&file)?;
    let gf = g.field().clone();
    let (d, q) = (file.d, file.q);
    match &class {
        Classification::ContainsSL { order } => {
            c.push("|SL_d| divides the order", (order % groups::order_sl(d, q)?) == BigUint::from(0u32));
            c.push("order divides |GL_d|", (groups::order_gl(d, q)? % order) == BigUint::from(0u32));
            c.verdict = true;
        }
        Classification::SubGammaL1 { order, witness } => {
            c.push("order divides |ΓL_1(q^d)|", (groups::order_gammal1(d, q)? % order) == BigUint::from(0u32));
            c.push("characteristic polynomial", witness.cyclic.char_poly(&gf) == witness.char_poly);
            c.push("characteristic polynomial is irreducible", poly::is_irreducible(&*gf, &witness.char_poly));
            let inv = witness.conjugator.inverse(&gf);
            c.push("conjugator is invertible", inv.is_some());
            c.push("generators normalize F_q[c]", file.generators.iter().all(|rows| normalizes(&gf, &Mat::from_rows(rows.clone()), &witness.cyclic)));
            c.verdict = true;
        }
        Classification::Inconclusive { .. } => c.push("verdict", false),
    }
    Ok(())
}

/// `g c g^{-1}` lies in the span of the powers of `c`.
fn normalizes(gf: &Gf, g: &Mat, cyc: &Mat) -> bool {
    let Some(gi) = g.inverse(gf) else { return false };
    let conj = g.mul(gf, cyc).mul(gf, &gi);
    let d = cyc.rows();
    let mut powers = vec![Mat::identity(d)];
    for _ in 1..d {
        let next = powers.last().unwrap().mul(gf, cyc);
        powers.push(next);
    }
    let span = Mat::from_cols(&powers.iter().map(|m| m.data().to_vec()).collect::<Vec<_>>());
    let mut cols: Vec<Vec<u64>> = powers.iter().map(|m| m.data().to_vec()).collect();
    cols.push(conj.data().to_vec());
    Mat::from_cols(&cols).rank(gf) == span.rank(gf)
}

fn obstructions(v: &Value, c: &mut Checks) -> Result<(), CliError> {
    let reports: Vec<ObstructionReport> = field(v, "report")?;
    for r in &reports {
        c.push(format!("{:?} e = {}: witness revalidates", r.case, r.e), r.revalidate());
    }
    let admitted = reports.iter().filter(|r| r.verdict == Verdict::Admitted).count();
    c.push("at most the SL_d case is admitted", admitted <= 1);
    c.verdict = true;
    Ok(())
}

fn embed_check(v: &Value, c: &mut Checks) -> Result<(), CliError> {
    let cert: EmbeddingCertificate = field(v, "report")?;
    let gf = Gf::with_order(9)?;
    let gf = &*gf;
    // B² = -I splits F_9^3 into ±i eigenspaces: Σ_k |GL_3| / (|GL_k| |GL_{3-k}|)
    let gl = |k: u32| -> u64 { (0..k).map(|i| 9u64.pow(k) - 9u64.pow(i)).product() };
    let involutive: u64 = (0..=3).map(|k| gl(3) / (gl(k) * gl(3 - k))).sum();
    c.push("13 ∤ |GL_1(F_9)|, 13 ∤ |GL_2(F_9)|", cert.gl1_order == gl(1) && cert.gl2_order == gl(2) && !cert.gl1_order.is_multiple_of(13) && !cert.gl2_order.is_multiple_of(13));
    c.push("four representatives", cert.representatives == 4 && cert.representative_char_polys.len() == 4);
    let mut polys = cert.representative_char_polys.clone();
    polys.sort();
    polys.dedup();
    c.push("representative characteristic polynomials are distinct", polys.len() == 4);
    let x13_minus_1: Vec<u64> = std::iter::once(gf.neg(1)).chain(std::iter::repeat_n(0, 12)).chain([1]).collect();
    c.push("each characteristic polynomial divides x^13 - 1 and is irreducible", cert.representative_char_polys.iter().all(|f| {
        f.len() == 4 && poly::rem(gf, &x13_minus_1, f).is_empty() && poly::is_irreducible(gf, f)
    }));
    c.push(format!("candidates = {involutive}"), cert.candidates as u64 == involutive);
    c.push("pairs = representatives × candidates", cert.pairs_searched == (cert.representatives * cert.candidates) as u64);
    c.push("every pair accounted for", cert.over_cap + cert.below_target + cert.hits.len() as u64 == cert.pairs_searched);
    let minus_i = Mat::identity(3).scale(gf, gf.neg(1));
    c.push("hits satisfy B² = -I", cert.hits.iter().all(|h| h.b.mul(gf, &h.b) == minus_i));
    let embeds = cert.hits.iter().any(|h| h.matches);
    c.push("verdict flag", (cert.verdict == EmbeddingVerdict::NoEmbedding) == !embeds);
    if !embeds {
        c.unwitnessed.push("over-cap and below-target pairs are counts from the search".into());
    }
    c.verdict = !embeds;
    Ok(())
}
