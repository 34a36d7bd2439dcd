//! Randomized and exhaustive verification suites. Every generator is
//! seeded, case ids are stable, and reports serialize to JSON
//! deterministically (wall time is attached only on request).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functor::{cojacquet, hermitian_dual, jacquet, spectrum_y1, y_weight_multiset};
use crate::hmodule::{binomial, default_dim_cap, HModule};
use crate::kring::KElement;
use crate::scalar::Scalar;
use crate::segment::{Multisegment, Segment};
use crate::weight::{kgroup_paths, w_prime_for, Direction, KPathCase, Weight};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct SuiteConfig {
    pub seed: u64,
    pub n_max: usize,
    pub m_max: usize,
    pub entry_range: i64,
    pub translation_classes: Vec<Scalar>,
    pub dim_cap: usize,
    pub case_count: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            n_max: 4,
            m_max: 6,
            entry_range: 3,
            translation_classes: vec![
                Scalar::zero(),
                "1/3".parse().expect("literal"),
                "1/2 i".parse().expect("literal"),
            ],
            dim_cap: default_dim_cap(),
            case_count: 200,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    pub fn compare<A: std::fmt::Display, B: std::fmt::Display>(
        name: &str,
        expected: A,
        actual: B,
    ) -> Check {
        let expected = expected.to_string();
        let actual = actual.to_string();
        let pass = expected == actual;
        Check { name: name.to_string(), expected, actual, pass }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CaseReport {
    pub case: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub level: Option<String>,
    #[serde(rename = "pathA", skip_serializing_if = "Option::is_none", default)]
    pub path_a: Option<String>,
    #[serde(rename = "pathB", skip_serializing_if = "Option::is_none", default)]
    pub path_b: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub equal: Option<bool>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl CaseReport {
    pub fn new(case: impl Into<String>) -> CaseReport {
        CaseReport {
            case: case.into(),
            level: None,
            path_a: None,
            path_b: None,
            equal: None,
            checks: Vec::new(),
            pass: true,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.pass &= check.pass;
        self.checks.push(check);
    }

    pub fn from_error(case: impl Into<String>, err: &Error) -> CaseReport {
        let mut report = CaseReport::new(case);
        report.push(Check::compare("no error", "ok", format!("error: {err}")));
        report
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub name: String,
    pub cases: Vec<CaseReport>,
    pub passed: usize,
    pub failed: usize,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_ms: Option<u128>,
}

impl Report {
    pub fn from_cases(name: impl Into<String>, mut cases: Vec<CaseReport>) -> Report {
        cases.sort_by(|a, b| a.case.cmp(&b.case));
        let passed = cases.iter().filter(|c| c.pass).count();
        let failed = cases.len() - passed;
        Report {
            name: name.into(),
            pass: failed == 0,
            passed,
            failed,
            cases,
            wall_time_ms: None,
        }
    }

    pub fn merge(name: impl Into<String>, parts: Vec<Report>) -> Report {
        let mut cases = Vec::new();
        for part in parts {
            let prefix = part.name.clone();
            for mut case in part.cases {
                case.case = format!("{prefix} {}", case.case);
                cases.push(case);
            }
        }
        Report::from_cases(name, cases)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{}: {} ({} cases, {} failed{})",
            self.name,
            if self.pass { "PASS" } else { "FAIL" },
            self.cases.len(),
            self.failed,
            match self.wall_time_ms {
                Some(ms) => format!(", {ms} ms"),
                None => String::new(),
            }
        );
        for case in &self.cases {
            if case.pass {
                continue;
            }
            let _ = writeln!(out, "  [FAIL] {}", case.case);
            for check in case.checks.iter().filter(|c| !c.pass) {
                let _ = writeln!(
                    out,
                    "    {}: expected {} but got {}",
                    check.name, check.expected, check.actual
                );
            }
        }
        out
    }
}

pub fn multinomial(total: usize, parts: &[usize]) -> u128 {
    debug_assert_eq!(total, parts.iter().sum::<usize>());
    let fact = |k: usize| -> u128 { (1..=k as u128).product::<u128>().max(1) };
    parts.iter().fold(fact(total), |acc, &p| acc / fact(p))
}

fn fingerprint_string(fp: &BTreeMap<Vec<Scalar>, usize>) -> String {
    use itertools::Itertools;
    let body = fp
        .iter()
        .map(|(tuple, mult)| format!("({}):{}", tuple.iter().join(","), mult))
        .join(", ");
    format!("{{{body}}}")
}

fn spectrum_string(spec: &[(Scalar, usize)]) -> String {
    use itertools::Itertools;
    let body = spec.iter().map(|(a, d)| format!("({a},{d})")).join(", ");
    format!("{{{body}}}")
}

/// Seeded generator for random weights, segments, and K-ring elements.
pub struct CaseGen {
    rng: ChaCha8Rng,
    classes: Vec<Scalar>,
    n_max: usize,
    m_max: usize,
    entry_range: i64,
}

impl CaseGen {
    pub fn new(cfg: &SuiteConfig) -> CaseGen {
        CaseGen {
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            classes: cfg.translation_classes.clone(),
            n_max: cfg.n_max.max(1),
            m_max: cfg.m_max,
            entry_range: cfg.entry_range.max(0),
        }
    }

    pub fn derive_seed(&mut self) -> u64 {
        self.rng.random()
    }

    fn class_offset(&mut self) -> Scalar {
        let idx = self.rng.random_range(0..self.classes.len());
        self.classes[idx].clone()
    }

    fn base_entry(&mut self) -> i64 {
        self.rng.random_range(-self.entry_range..=self.entry_range)
    }

    /// Random weight with non-negative `mu` summing to at most `m_cap`.
    /// Repeated `lambdaR` entries and a second translation class appear
    /// with substantial probability.
    pub fn weight(&mut self, m_cap: usize) -> Weight {
        let n = self.rng.random_range(1..=self.n_max);
        let m = self.rng.random_range(0..=m_cap.min(self.m_max));
        let primary = self.class_offset();
        let secondary = self.class_offset();
        let mut lambda_r: Vec<Scalar> = Vec::with_capacity(n);
        for k in 0..n {
            let offset = if self.rng.random_range(0..4) == 0 { &secondary } else { &primary };
            let entry = offset + &Scalar::from_int(self.base_entry());
            if k > 0 && self.rng.random_range(0..3) == 0 {
                let j = self.rng.random_range(0..k);
                lambda_r.push(lambda_r[j].clone());
            } else {
                lambda_r.push(entry);
            }
        }
        let mut mu = vec![0i64; n];
        for _ in 0..m {
            let k = self.rng.random_range(0..n);
            mu[k] += 1;
        }
        let lambda_l: Vec<Scalar> = lambda_r
            .iter()
            .zip(&mu)
            .map(|(r, &d)| r + &Scalar::from_int(d))
            .collect();
        Weight::new(lambda_l, lambda_r).expect("constructed integral")
    }

    /// Random weight where some `mu` coordinates may be negative, to cover
    /// the zero branch of `gamma`.
    pub fn weight_possibly_negative(&mut self, m_cap: usize) -> Weight {
        let base = self.weight(m_cap);
        if self.rng.random_range(0..4) != 0 {
            return base;
        }
        let n = base.n();
        let k = self.rng.random_range(0..n);
        let mut lambda_l = base.lambda_l().to_vec();
        let drop = self.rng.random_range(1..=3);
        lambda_l[k] = &lambda_l[k] - &Scalar::from_int(drop);
        Weight::new(lambda_l, base.lambda_r().to_vec()).expect("still integral")
    }

    /// Random nonempty segment of length at most `max_len`; `gaussian`
    /// forces the imaginary class offset.
    pub fn segment(&mut self, max_len: usize, gaussian: bool) -> Segment {
        let offset = if gaussian {
            "1/2 i".parse::<Scalar>().expect("literal")
        } else {
            self.class_offset()
        };
        let start = &offset + &Scalar::from_int(self.base_entry());
        let len = self.rng.random_range(1..=max_len.max(1)) as i64;
        Segment::new(start.clone(), &start + &Scalar::from_int(len - 1))
            .expect("integral by construction")
    }

    /// Random K-ring element: up to three monomials of up to three segments.
    pub fn k_element(&mut self) -> KElement {
        let mut out = KElement::zero();
        let terms = self.rng.random_range(1..=3);
        for _ in 0..terms {
            let segs = self.rng.random_range(1..=3);
            let mut parts = Vec::with_capacity(segs);
            for _ in 0..segs {
                let gaussian = self.rng.random_range(0..4) == 0;
                parts.push(self.segment(3, gaussian));
            }
            let mono = Multisegment::from_segments(parts);
            let coeff = loop {
                let c = self.rng.random_range(-3..=3);
                if c != 0 {
                    break c;
                }
            };
            out.add_term(mono, coeff);
        }
        out
    }

    /// A derivation point: usually an endpoint in use, sometimes a miss.
    pub fn derivation_point(&mut self, pool: &[Scalar]) -> Scalar {
        if !pool.is_empty() && self.rng.random_range(0..4) != 0 {
            let idx = self.rng.random_range(0..pool.len());
            pool[idx].clone()
        } else {
            &self.class_offset() + &Scalar::from_int(self.base_entry())
        }
    }
}

fn case_from_kpath(lam: &Weight, i: usize, direction: Direction, kp: &KPathCase) -> CaseReport {
    let mut case = CaseReport::new(format!(
        "lam={lam} i={i} w={} dir={direction}",
        kp.w.one_line()
    ));
    case.level = Some("k-group".to_string());
    case.path_a = Some(kp.path_a.to_string());
    case.path_b = Some(kp.path_b.to_string());
    case.equal = Some(kp.equal);
    case.push(Check::compare("paths equal", &kp.path_a, &kp.path_b));
    case
}

/// K-level main theorem: both composite paths agree for random
/// `(lambda, i, w)` in both directions.
pub fn verify_theorem_main_k(cfg: &SuiteConfig) -> Report {
    let mut gen = CaseGen::new(cfg);
    let mut cases = Vec::new();
    let mut counter = 0usize;
    while cases.len() < cfg.case_count {
        let lam = gen.weight_possibly_negative(cfg.m_max);
        let i = gen.rng.random_range(1..=lam.n());
        let seed = gen.derive_seed();
        let ws = w_prime_for(&lam, 24, seed);
        let take = ws.len().min(4);
        for dir in [Direction::RaiseRight, Direction::LowerLeft] {
            match kgroup_paths(&lam, i, dir, &ws[..take]) {
                Ok(kps) => {
                    for kp in &kps {
                        counter += 1;
                        let mut case = case_from_kpath(&lam, i, dir, kp);
                        case.case = format!("{counter:05} {}", case.case);
                        cases.push(case);
                    }
                }
                Err(err) => {
                    counter += 1;
                    cases.push(CaseReport::from_error(
                        format!("{counter:05} lam={lam} i={i} dir={dir}"),
                        &err,
                    ));
                }
            }
        }
    }
    Report::from_cases("theorem-main-k", cases)
}

/// Module-level main theorem at one weight: Jacquet of the Gamma module
/// against the translation summands, by dimension and fingerprint.
/// Falls back to the K-level identity when the module exceeds `dim_cap`.
pub fn verify_theorem_main_module(lam: &Weight, i: usize, dim_cap: usize) -> Report {
    Report::from_cases(
        "theorem-main-module",
        vec![theorem_main_module_case(lam, i, dim_cap)],
    )
}

pub fn theorem_main_module_case(lam: &Weight, i: usize, dim_cap: usize) -> CaseReport {
    let case_id = format!("lam={lam} i={i}");
    if i == 0 || i > lam.n() {
        return CaseReport::from_error(
            case_id,
            &Error::IndexOutOfRange { index: i, n: lam.n() },
        );
    }
    let mu = match lam.mu_usize() {
        Ok(mu) => mu,
        Err(err) => return CaseReport::from_error(case_id, &err),
    };
    let m: usize = mu.iter().sum();
    if m == 0 {
        let mut case = CaseReport::new(case_id);
        case.level = Some("module".to_string());
        case.push(Check::compare("m >= 1 required, trivially empty", 0, 0));
        return case;
    }

    let predicted_dim = multinomial(m, &mu);
    if predicted_dim > dim_cap as u128 {
        // Degrade to the K-level statement and say so.
        let ws = w_prime_for(lam, 24, 0);
        let take = ws.len().min(4);
        match kgroup_paths(lam, i, Direction::RaiseRight, &ws[..take]) {
            Ok(kps) => {
                let mut case = CaseReport::new(case_id);
                case.level = Some("k-group (dim cap exceeded)".to_string());
                for kp in kps {
                    case.push(Check::compare(
                        &format!("paths equal at w={}", kp.w.one_line()),
                        &kp.path_a,
                        &kp.path_b,
                    ));
                }
                return case;
            }
            Err(err) => return CaseReport::from_error(case_id, &err),
        }
    }

    let module = match HModule::gamma_module(lam, dim_cap) {
        Ok(module) => module,
        Err(err) => return CaseReport::from_error(case_id, &err),
    };
    let point = &lam.lambda_r()[i - 1] + &Scalar::half();
    let jac = match jacquet(&module, &point) {
        Ok(jac) => jac,
        Err(err) => return CaseReport::from_error(case_id, &err),
    };

    let matching: Vec<usize> = (0..lam.n())
        .filter(|&k| lam.lambda_r()[k] == lam.lambda_r()[i - 1] && mu[k] >= 1)
        .collect();
    let expected_dim: u128 = matching
        .iter()
        .map(|&k| {
            let mut parts = mu.clone();
            parts[k] -= 1;
            multinomial(m - 1, &parts)
        })
        .sum();

    let mut case = CaseReport::new(case_id);
    case.level = Some("module".to_string());
    case.push(Check::compare("jacquet dimension", expected_dim, jac.dim()));

    let jac_fp = match y_weight_multiset(&jac) {
        Ok(fp) => fp,
        Err(err) => return CaseReport::from_error(case.case, &err),
    };
    let mut union: BTreeMap<Vec<Scalar>, usize> = BTreeMap::new();
    for &k in &matching {
        let mut lambda_r = lam.lambda_r().to_vec();
        lambda_r[k] = &lambda_r[k] + &Scalar::one();
        let summand = match Weight::new(lam.lambda_l().to_vec(), lambda_r) {
            Ok(w) => w,
            Err(err) => return CaseReport::from_error(case.case, &err),
        };
        let sm = match HModule::gamma_module(&summand, dim_cap) {
            Ok(sm) => sm,
            Err(err) => return CaseReport::from_error(case.case, &err),
        };
        let fp = match y_weight_multiset(&sm) {
            Ok(fp) => fp,
            Err(err) => return CaseReport::from_error(case.case, &err),
        };
        for (tuple, mult) in fp {
            *union.entry(tuple).or_insert(0) += mult;
        }
    }
    case.push(Check::compare(
        "fingerprint equals disjoint union of summands",
        fingerprint_string(&union),
        fingerprint_string(&jac_fp),
    ));
    case
}

/// Eigenvalue proposition at one weight: spectrum of `y_1` on the Gamma
/// module against the multinomial prediction.
pub fn verify_eigenvalue_prop(lam: &Weight, dim_cap: usize) -> Report {
    Report::from_cases("eigenvalue-prop", vec![eigenvalue_prop_case(lam, dim_cap)])
}

pub fn eigenvalue_prop_case(lam: &Weight, dim_cap: usize) -> CaseReport {
    let case_id = format!("lam={lam}");
    let mu = match lam.mu_usize() {
        Ok(mu) => mu,
        Err(err) => return CaseReport::from_error(case_id, &err),
    };
    let m: usize = mu.iter().sum();
    let module = match HModule::gamma_module(lam, dim_cap) {
        Ok(module) => module,
        Err(err) => return CaseReport::from_error(case_id, &err),
    };
    let mut case = CaseReport::new(case_id);
    if m == 0 {
        case.push(Check::compare("empty spectrum", "{}", "{}"));
        return case;
    }
    let mut predicted: BTreeMap<Scalar, usize> = BTreeMap::new();
    for k in 0..lam.n() {
        if mu[k] == 0 {
            continue;
        }
        let eig = &lam.lambda_r()[k] + &Scalar::half();
        let mut parts = mu.clone();
        parts[k] -= 1;
        *predicted.entry(eig).or_insert(0) += multinomial(m - 1, &parts) as usize;
    }
    let predicted: Vec<(Scalar, usize)> = predicted.into_iter().collect();
    match spectrum_y1(&module) {
        Ok(actual) => case.push(Check::compare(
            "spectrum of y1",
            spectrum_string(&predicted),
            spectrum_string(&actual),
        )),
        Err(err) => case.push(Check::compare(
            "spectrum of y1",
            spectrum_string(&predicted),
            format!("error: {err}"),
        )),
    }
    case
}

/// Leibniz dimension identity for one `(M1, M2, a)` triple.
pub fn verify_leibniz_module(
    m1: &HModule,
    m2: &HModule,
    a: &Scalar,
    dim_cap: usize,
) -> Report {
    Report::from_cases(
        "leibniz-module",
        vec![leibniz_module_case(m1, m2, a, dim_cap)],
    )
}

pub fn leibniz_module_case(
    m1: &HModule,
    m2: &HModule,
    a: &Scalar,
    dim_cap: usize,
) -> CaseReport {
    let case_id = format!(
        "m1={} dim1={} m2={} dim2={} a={a}",
        m1.m(),
        m1.dim(),
        m2.m(),
        m2.dim()
    );
    let jac_dim = |module: &HModule| -> Result<usize> {
        if module.m() == 0 {
            Ok(0)
        } else {
            Ok(jacquet(module, a)?.dim())
        }
    };
    let run = || -> Result<(usize, u128)> {
        let induced = m1.induce(m2, dim_cap)?;
        let lhs = jac_dim(&induced)?;
        let m = induced.m();
        let term1 = if m1.m() == 0 {
            0
        } else {
            binomial(m - 1, m1.m() - 1) * jac_dim(m1)? as u128 * m2.dim() as u128
        };
        let term2 = if m2.m() == 0 {
            0
        } else {
            binomial(m - 1, m1.m()) * m1.dim() as u128 * jac_dim(m2)? as u128
        };
        Ok((lhs, term1 + term2))
    };
    match run() {
        Ok((lhs, rhs)) => {
            let mut case = CaseReport::new(case_id);
            case.push(Check::compare("leibniz dimension identity", rhs, lhs));
            case
        }
        Err(err) => CaseReport::from_error(case_id, &err),
    }
}

/// Hermitian-dual checks for the product of Steinberg modules on `segments`:
/// the Jacquet/co-Jacquet dimension intertwining at `a`, the double dual,
/// and the product-reversal rule.
pub fn verify_dual_suite(segments: &[Segment], a: &Scalar, dim_cap: usize) -> Report {
    Report::from_cases("dual-suite", vec![dual_suite_case(segments, a, dim_cap)])
}

pub fn dual_suite_case(segments: &[Segment], a: &Scalar, dim_cap: usize) -> CaseReport {
    use itertools::Itertools;
    let case_id = format!(
        "segments={{{}}} a={a}",
        segments.iter().map(Segment::to_string).join(",")
    );
    let build = |segs: &[Segment]| -> Result<HModule> {
        let mut acc = HModule::trivial();
        for seg in segs {
            acc = acc.induce(&HModule::steinberg(seg), dim_cap)?;
        }
        Ok(acc)
    };
    let run = || -> Result<Vec<Check>> {
        let module = build(segments)?;
        let dual = hermitian_dual(&module);
        let mut checks = Vec::new();

        let lhs = if module.m() == 0 { 0 } else { jacquet(&module, a)?.dim() };
        let rhs = if module.m() == 0 {
            0
        } else {
            cojacquet(&dual, &a.neg_conj())?.dim()
        };
        checks.push(Check::compare(
            "dim jacquet(M, a) = dim cojacquet(M*, -conj a)",
            lhs,
            rhs,
        ));

        let fp = y_weight_multiset(&module)?;
        let double = y_weight_multiset(&hermitian_dual(&dual))?;
        checks.push(Check::compare(
            "double dual fingerprint",
            fingerprint_string(&fp),
            fingerprint_string(&double),
        ));

        let reversed: Vec<Segment> = segments
            .iter()
            .rev()
            .map(Segment::negate_conjugate)
            .collect();
        let reversed_fp = y_weight_multiset(&build(&reversed)?)?;
        let dual_fp = y_weight_multiset(&dual)?;
        checks.push(Check::compare(
            "product reversal fingerprint",
            fingerprint_string(&reversed_fp),
            fingerprint_string(&dual_fp),
        ));
        Ok(checks)
    };
    match run() {
        Ok(checks) => {
            let mut case = CaseReport::new(case_id);
            for check in checks {
                case.push(check);
            }
            case
        }
        Err(err) => CaseReport::from_error(case_id, &err),
    }
}

fn relation_case(tag: &str, module: &HModule) -> CaseReport {
    let rel = module.check_relations();
    let mut case = CaseReport::new(format!("{tag} m={} dim={}", module.m(), module.dim()));
    case.push(Check::compare(
        "defining relations",
        "pass",
        match &rel.first_failure {
            None => "pass".to_string(),
            Some(name) => format!("fail at {name}"),
        },
    ));
    case
}

/// Relation suite over a deterministic mixed corpus of constructions.
pub fn verify_relations_corpus(cfg: &SuiteConfig, count: usize) -> Report {
    let mut gen = CaseGen::new(cfg);
    let mut cases = Vec::new();

    // two fixed full-size regular inductions first, when the cap allows them
    for (idx, lam) in [
        Weight::from_ints(&[1, 2, 3, 4, 5, 6], &[0, 1, 2, 3, 4, 5]),
        Weight::from_ints(&[1, 1, 3, 3, 0], &[0, 0, 1, 2, -1]),
    ]
    .iter()
    .enumerate()
    {
        if cfg.dim_cap < 720 {
            break;
        }
        match HModule::gamma_module(lam, cfg.dim_cap) {
            Ok(module) => cases.push(relation_case(&format!("{idx:04} gamma lam={lam}"), &module)),
            Err(err) => cases.push(CaseReport::from_error(format!("{idx:04} gamma lam={lam}"), &err)),
        }
    }

    while cases.len() < count {
        let idx = cases.len();
        let kind = gen.rng.random_range(0..4);
        let result: Result<(String, HModule)> = (|| match kind {
            0 => {
                let gaussian = gen.rng.random_range(0..5) == 0;
                let seg = gen.segment(cfg.m_max.max(1), gaussian);
                Ok((format!("steinberg {seg}"), HModule::steinberg(&seg)))
            }
            1 => {
                let l1 = gen.rng.random_range(1..=3);
                let s1 = gen.segment(l1, false);
                let s2 = gen.segment(cfg.m_max.saturating_sub(s1.len()).max(1), false);
                let module =
                    HModule::steinberg(&s1).induce(&HModule::steinberg(&s2), cfg.dim_cap)?;
                Ok((format!("induce {s1}x{s2}"), module))
            }
            2 => {
                let s1 = gen.segment(2, false);
                let gaussian = gen.rng.random_range(0..3) == 0;
                let s2 = gen.segment(2, gaussian);
                let s3 = gen.segment(2, false);
                let module = HModule::steinberg(&s1)
                    .induce(&HModule::steinberg(&s2), cfg.dim_cap)?
                    .induce(&HModule::steinberg(&s3), cfg.dim_cap)?;
                Ok((format!("induce {s1}x{s2}x{s3}"), module))
            }
            _ => {
                let lam = gen.weight(cfg.m_max);
                let module = HModule::gamma_module(&lam, cfg.dim_cap)?;
                Ok((format!("gamma lam={lam}"), module))
            }
        })();
        match result {
            Ok((tag, module)) => cases.push(relation_case(&format!("{idx:04} {tag}"), &module)),
            // constructions that outgrow the cap are redrawn, not failed
            Err(Error::DimensionCap { .. }) => continue,
            Err(err) => cases.push(CaseReport::from_error(format!("{idx:04} kind{kind}"), &err)),
        }
    }
    Report::from_cases("relations", cases)
}

/// Dimension formula for random weights.
pub fn verify_dimension_formula(cfg: &SuiteConfig, count: usize) -> Report {
    let mut gen = CaseGen::new(cfg);
    let mut cases = Vec::new();
    for idx in 0..count {
        let lam = gen.weight(cfg.m_max);
        let mu = lam.mu_usize().expect("generator yields non-negative mu");
        let m: usize = mu.iter().sum();
        let case_id = format!("{idx:04} lam={lam}");
        match HModule::gamma_module(&lam, cfg.dim_cap) {
            Ok(module) => {
                let mut case = CaseReport::new(case_id);
                case.push(Check::compare(
                    "dim = m!/prod(mu!)",
                    multinomial(m, &mu),
                    module.dim(),
                ));
                cases.push(case);
            }
            Err(err) => cases.push(CaseReport::from_error(case_id, &err)),
        }
    }
    Report::from_cases("dimension-formula", cases)
}

/// Jacquet base case on Steinberg modules, hit and miss.
pub fn verify_jacquet_base(cfg: &SuiteConfig, count: usize) -> Report {
    let mut gen = CaseGen::new(cfg);
    let mut cases = Vec::new();
    for idx in 0..count {
        let seg = gen.segment(4, idx % 4 == 0);
        let start = seg.start().expect("nonempty").clone();
        let module = HModule::steinberg(&seg);
        let case_id = format!("{idx:04} seg={seg}");
        let run = || -> Result<(CaseReport,)> {
            let mut case = CaseReport::new(case_id.clone());
            let hit = jacquet(&module, &start)?;
            let expected = HModule::steinberg(&seg.truncate_left()?);
            case.push(Check::compare(
                "hit dimension",
                expected.dim(),
                hit.dim(),
            ));
            case.push(Check::compare(
                "hit fingerprint",
                fingerprint_string(&y_weight_multiset(&expected)?),
                fingerprint_string(&y_weight_multiset(&hit)?),
            ));
            let miss_point = &start + &Scalar::from_int(1 + (idx % 3) as i64);
            let miss = jacquet(&module, &miss_point)?;
            case.push(Check::compare("miss dimension", 0, miss.dim()));
            let off_class = &start + &"1/5".parse::<Scalar>().expect("literal");
            let off = jacquet(&module, &off_class)?;
            case.push(Check::compare("off-class dimension", 0, off.dim()));
            Ok((case,))
        };
        match run() {
            Ok((case,)) => cases.push(case),
            Err(err) => cases.push(CaseReport::from_error(case_id, &err)),
        }
    }
    Report::from_cases("jacquet-base", cases)
}

/// K-ring intertwining of the dual with the two derivations.
pub fn verify_kring_intertwining(cfg: &SuiteConfig, count: usize) -> Report {
    let mut gen = CaseGen::new(cfg);
    let mut cases = Vec::new();
    for idx in 0..count {
        let x = gen.k_element();
        let pool: Vec<Scalar> = x
            .terms()
            .flat_map(|(mono, _)| {
                mono.segments()
                    .iter()
                    .filter_map(|s| s.start().cloned())
                    .collect::<Vec<_>>()
            })
            .collect();
        let a = gen.derivation_point(&pool);
        let lhs = x.jac(&a).hermitian_dual();
        let rhs = x.hermitian_dual().cojac(&a.neg_conj());
        let mut case = CaseReport::new(format!("{idx:04} x={x} a={a}"));
        case.push(Check::compare(
            "dual(jac_a x) = cojac_{-conj a}(dual x)",
            &lhs,
            &rhs,
        ));
        cases.push(case);
    }
    Report::from_cases("kring-intertwining", cases)
}

fn scaled(base: usize, case_count: usize) -> usize {
    (base * case_count / 200).max(3)
}

/// The full suite: every verifier with deterministic seeded corpora sized
/// off `case_count` (the K-level theorem section uses it exactly). The
/// module sections generate sizes of at most `m_max`, clamped further so
/// that `m_max!` stays within the dimension cap.
pub fn run_suite(cfg: &SuiteConfig) -> Report {
    let mut cfg = cfg.clone();
    while cfg.m_max > 0 && multinomial(cfg.m_max, &vec![1; cfg.m_max]) > cfg.dim_cap as u128 {
        cfg.m_max -= 1;
    }
    let cfg = &cfg;
    let mut parts = Vec::new();

    parts.push(verify_relations_corpus(cfg, scaled(50, cfg.case_count)));
    parts.push(verify_dimension_formula(cfg, scaled(50, cfg.case_count)));
    parts.push(verify_jacquet_base(cfg, scaled(20, cfg.case_count)));

    let mut gen = CaseGen::new(cfg);
    let mut eig_cases = Vec::new();
    for idx in 0..scaled(50, cfg.case_count) {
        let lam = gen.weight(cfg.m_max);
        let mut case = eigenvalue_prop_case(&lam, cfg.dim_cap);
        case.case = format!("{idx:04} {}", case.case);
        eig_cases.push(case);
    }
    parts.push(Report::from_cases("eigenvalue-prop", eig_cases));

    parts.push(verify_theorem_main_k(cfg));

    let mut module_cases = Vec::new();
    let mut idx = 0;
    while module_cases.len() < scaled(20, cfg.case_count) {
        let lam = gen.weight(cfg.m_max.min(5));
        if cfg.m_max > 0 && lam.m_of() == Some(0) {
            continue;
        }
        let i = gen.rng.random_range(1..=lam.n());
        let mut case = theorem_main_module_case(&lam, i, cfg.dim_cap);
        case.case = format!("{idx:04} {}", case.case);
        module_cases.push(case);
        idx += 1;
    }
    parts.push(Report::from_cases("theorem-main-module", module_cases));

    let mut leibniz_cases = Vec::new();
    for idx in 0..scaled(30, cfg.case_count) {
        let l1 = gen.rng.random_range(1..=3usize).min(cfg.m_max.max(1));
        let s1 = gen.segment(l1, idx % 6 == 0);
        let remaining = cfg.m_max.min(6).saturating_sub(s1.len()).max(1);
        let split = gen.rng.random_range(0..3) == 0 && remaining >= 2;
        let fac2: Vec<Segment> = if split {
            let sa = gen.segment(remaining - 1, false);
            let sb = gen.segment((remaining - sa.len()).max(1), false);
            vec![sa, sb]
        } else {
            vec![gen.segment(remaining, false)]
        };
        let mut pool: Vec<Scalar> = s1.points();
        pool.extend(fac2.iter().flat_map(Segment::points));
        let a = gen.derivation_point(&pool);

        let lens: Vec<usize> = std::iter::once(s1.len())
            .chain(fac2.iter().map(Segment::len))
            .collect();
        let total: usize = lens.iter().sum();
        let mut case = if multinomial(total, &lens) <= cfg.dim_cap as u128 {
            let m1 = HModule::steinberg(&s1);
            let m2 = fac2
                .iter()
                .fold(HModule::trivial(), |acc, seg| {
                    acc.induce(&HModule::steinberg(seg), cfg.dim_cap)
                        .expect("within cap by the multinomial bound")
                });
            leibniz_module_case(&m1, &m2, &a, cfg.dim_cap)
        } else {
            // too large for matrices: check the same derivation identity
            // in the K-ring instead
            let x = KElement::from_segment(&s1);
            let y = fac2
                .iter()
                .fold(KElement::one(), |acc, seg| &acc * &KElement::from_segment(seg));
            let lhs = (&x * &y).jac(&a);
            let rhs = &(&x.jac(&a) * &y) + &(&x * &y.jac(&a));
            let mut case = CaseReport::new(format!("x={x} y={y} a={a}"));
            case.level = Some("k-group (dim cap exceeded)".to_string());
            case.push(Check::compare("leibniz identity", &rhs, &lhs));
            case
        };
        case.case = format!("{idx:04} {}", case.case);
        leibniz_cases.push(case);
    }
    parts.push(Report::from_cases("leibniz-module", leibniz_cases));

    let mut dual_cases = Vec::new();
    for idx in 0..scaled(20, cfg.case_count) {
        let gaussian = idx < 6;
        let count = gen.rng.random_range(1..=3usize);
        let mut segments = Vec::new();
        let mut budget = 5usize;
        for _ in 0..count {
            if budget == 0 {
                break;
            }
            let seg = gen.segment(budget.min(3), gaussian);
            budget = budget.saturating_sub(seg.len());
            segments.push(seg);
        }
        let pool: Vec<Scalar> = segments.iter().filter_map(|s| s.start().cloned()).collect();
        let a = gen.derivation_point(&pool);

        let lens: Vec<usize> = segments.iter().map(Segment::len).collect();
        let total: usize = lens.iter().sum();
        let mut case = if multinomial(total, &lens) <= cfg.dim_cap as u128 {
            dual_suite_case(&segments, &a, cfg.dim_cap)
        } else {
            let x = segments
                .iter()
                .fold(KElement::one(), |acc, seg| &acc * &KElement::from_segment(seg));
            let mut case = CaseReport::new(format!("x={x} a={a}"));
            case.level = Some("k-group (dim cap exceeded)".to_string());
            case.push(Check::compare("double dual", &x, &x.hermitian_dual().hermitian_dual()));
            let reversed = segments
                .iter()
                .rev()
                .fold(KElement::one(), |acc, seg| {
                    &acc * &KElement::from_segment(&seg.negate_conjugate())
                });
            case.push(Check::compare("product reversal", &reversed, &x.hermitian_dual()));
            case.push(Check::compare(
                "dual intertwines jac and cojac",
                &x.jac(&a).hermitian_dual(),
                &x.hermitian_dual().cojac(&a.neg_conj()),
            ));
            case
        };
        case.case = format!("{idx:04} {}", case.case);
        dual_cases.push(case);
    }
    parts.push(Report::from_cases("dual-suite", dual_cases));

    parts.push(verify_kring_intertwining(cfg, scaled(100, cfg.case_count)));

    Report::merge("suite", parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(3, &[2, 1]), 3);
        assert_eq!(multinomial(6, &[2, 4]), 15);
        assert_eq!(multinomial(6, &[1, 1, 1, 1, 1, 1]), 720);
        assert_eq!(multinomial(0, &[]), 1);
        assert_eq!(multinomial(0, &[0, 0]), 1);
    }

    #[test]
    fn frozen_module_theorem_case() {
        let lam = Weight::from_ints(&[2, 1], &[0, 0]);
        let case = theorem_main_module_case(&lam, 1, 2000);
        assert!(case.pass, "checks: {:?}", case.checks);
        assert_eq!(case.level.as_deref(), Some("module"));
        assert_eq!(case.checks[0].actual, "3");
    }

    #[test]
    fn module_theorem_degrades_on_cap() {
        let lam = Weight::from_ints(&[2, 1], &[0, 0]);
        let case = theorem_main_module_case(&lam, 1, 2);
        assert!(case.pass);
        assert_eq!(case.level.as_deref(), Some("k-group (dim cap exceeded)"));
    }

    #[test]
    fn frozen_leibniz_case() {
        let m1 = HModule::steinberg(&"[0,1]".parse().unwrap());
        let m2 = HModule::steinberg(&"[0,0]".parse().unwrap());
        let case = leibniz_module_case(&m1, &m2, &Scalar::zero(), 2000);
        assert!(case.pass, "checks: {:?}", case.checks);
        // both sides equal 3 = 2 + 1
        assert_eq!(case.checks[0].expected, "3");
    }

    #[test]
    fn leibniz_trivial_factor() {
        let m1 = HModule::steinberg(&"[0,1]".parse().unwrap());
        let trivial = HModule::trivial();
        let case = leibniz_module_case(&m1, &trivial, &Scalar::zero(), 2000);
        assert!(case.pass);
        assert_eq!(case.checks[0].expected, "1");
    }

    #[test]
    fn dual_suite_gamma_case() {
        let lam = Weight::from_ints(&[2, 1], &[0, 0]);
        let segments = lam.segments();
        let case = dual_suite_case(&segments, &"1/2".parse().unwrap(), 2000);
        assert!(case.pass, "checks: {:?}", case.checks);
    }

    #[test]
    fn dual_suite_empty_product() {
        let case = dual_suite_case(&[], &Scalar::zero(), 2000);
        assert!(case.pass);
    }

    #[test]
    fn eigenvalue_case_zero_weight() {
        let lam = Weight::from_ints(&[0, 0], &[0, 0]);
        let case = eigenvalue_prop_case(&lam, 2000);
        assert!(case.pass);
    }

    #[test]
    fn small_suite_is_deterministic_and_passes() {
        let cfg = SuiteConfig { case_count: 12, m_max: 4, ..SuiteConfig::default() };
        let a = run_suite(&cfg);
        let b = run_suite(&cfg);
        assert!(a.pass, "{}", a.render_text());
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn suite_text_mentions_failures() {
        let mut case = CaseReport::new("demo");
        case.push(Check::compare("broken", 1, 2));
        let report = Report::from_cases("demo-suite", vec![case]);
        assert!(!report.pass);
        let text = report.render_text();
        assert!(text.contains("FAIL"));
        assert!(text.contains("expected 1 but got 2"));
    }
}
