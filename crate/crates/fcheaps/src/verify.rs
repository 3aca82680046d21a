//! Exhaustive property suites over enumerated FC heaps.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coxeter::{enumerate_fc, CoxeterSpec, Family};
use crate::decorated::{theta_tilde_with_scalar, DecDiagram, Scalar};
use crate::decoration::dec;
use crate::error::{Error, Result};
use crate::heap::Heap;
use crate::inverse::invert;
use crate::reduction::{reduce, reduce_random};
use crate::snake::{edge_bijection, fork_order_violations};
use crate::tl::{tau_alpha, theta_inverse_table, Diagram};

/// Failures kept in a report; the count is always exact.
pub const MAX_COUNTEREXAMPLES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Relations,
    DecTheta,
    Injective,
    Roundtrip,
    ReductionOrder,
    SnakesBijection,
    Catalan,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Relations,
        Suite::DecTheta,
        Suite::Injective,
        Suite::Roundtrip,
        Suite::ReductionOrder,
        Suite::SnakesBijection,
        Suite::Catalan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::DecTheta => "dec-theta",
            Suite::Injective => "injective",
            Suite::Roundtrip => "roundtrip",
            Suite::ReductionOrder => "reduction-order",
            Suite::SnakesBijection => "snakes-bijection",
            Suite::Catalan => "catalan",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::input(format!("unknown suite {s}")))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub spec: CoxeterSpec,
    pub max_len: Option<usize>,
    pub seed: u64,
    /// Random fork orders per heap in the reduction-order suite.
    pub orders: usize,
    /// Largest number of heaps a suite may enumerate.
    pub bound: usize,
    pub workers: usize,
}

impl VerifyConfig {
    pub fn new(spec: CoxeterSpec, max_len: Option<usize>) -> Self {
        VerifyConfig {
            spec,
            max_len,
            seed: 0,
            orders: 10,
            bound: 2_000_000,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub family: Family,
    pub n: usize,
    pub max_len: Option<usize>,
    pub checked: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    pub counterexamples: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    fn new(suite: Suite, cfg: &VerifyConfig) -> Self {
        Report {
            suite,
            family: cfg.spec.family,
            n: cfg.spec.n,
            max_len: cfg.max_len,
            checked: 0,
            failed: 0,
            count: None,
            counterexamples: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(what());
            }
        }
    }

    fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        self.failed += other.failed;
        for c in other.counterexamples {
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(c);
            }
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let family = match self.family {
            Family::TypeA => "A",
            Family::TypeCtilde => "Ctilde",
        };
        write!(
            f,
            "{} {}_{} max_len={}: {} checked, {} failed",
            self.suite,
            family,
            self.n,
            self.max_len.map_or("-".into(), |l| l.to_string()),
            self.checked,
            self.failed
        )?;
        if let Some(c) = self.count {
            write!(f, ", count {c}")?;
        }
        for c in &self.counterexamples {
            write!(f, "\n  {c}")?;
        }
        Ok(())
    }
}

fn heaps(cfg: &VerifyConfig) -> Result<Vec<Heap>> {
    let hs = enumerate_fc(cfg.spec, cfg.max_len)?;
    if hs.len() > cfg.bound {
        return Err(Error::resource(format!(
            "{} heaps exceed the bound {}",
            hs.len(),
            cfg.bound
        )));
    }
    Ok(hs)
}

fn require_ctilde(cfg: &VerifyConfig, suite: Suite) -> Result<()> {
    if cfg.spec.family != Family::TypeCtilde {
        return Err(Error::input(format!("suite {suite} needs type Ctilde")));
    }
    Ok(())
}

/// Run `check` over `items` on `cfg.workers` threads and merge the partial reports.
fn sharded<T: Sync>(
    suite: Suite,
    cfg: &VerifyConfig,
    items: &[T],
    check: impl Fn(usize, &T, &mut Report) + Sync,
) -> Report {
    let workers = cfg.workers.max(1);
    let chunk = items.len().div_ceil(workers).max(1);
    let mut report = Report::new(suite, cfg);
    let parts: Vec<Report> = std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .enumerate()
            .map(|(c, part)| {
                let check = &check;
                scope.spawn(move || {
                    let mut r = Report::new(suite, cfg);
                    for (i, x) in part.iter().enumerate() {
                        check(c * chunk + i, x, &mut r);
                    }
                    r
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification worker panicked"))
            .collect()
    });
    for p in parts {
        report.merge(p);
    }
    report
}

fn word_of(h: &Heap) -> String {
    format!("{:?}", h.word())
}

fn relations(cfg: &VerifyConfig) -> Result<Report> {
    let mut r = Report::new(Suite::Relations, cfg);
    let spec = cfg.spec;
    let rank = spec.rank() as u8;
    match spec.family {
        Family::TypeA => {
            let k = spec.k();
            let d = |i: u8| Diagram::simple_k(k, i as usize);
            let prod = |w: &[u8]| Diagram::of_word(k, w);
            for i in 1..=rank {
                let sq = prod(&[i, i]);
                r.record(sq.loops == 1 && sq.without_loops() == d(i), || {
                    format!("(a1) i={i}")
                });
                for j in 1..=rank {
                    if i.abs_diff(j) > 1 {
                        r.record(prod(&[i, j]) == prod(&[j, i]), || {
                            format!("(a2) i={i} j={j}")
                        });
                    }
                    if i.abs_diff(j) == 1 {
                        r.record(prod(&[i, j, i]) == d(i), || format!("(a3) i={i} j={j}"));
                    }
                }
            }
        }
        Family::TypeCtilde => {
            let simple = |i: u8| DecDiagram::simple(spec, i);
            let prod = |w: &[u8]| -> Result<(Scalar, DecDiagram)> {
                let mut acc = DecDiagram::identity(spec.k());
                let mut s = Scalar::ONE;
                for &i in w {
                    let (t, d) = acc.multiply(&simple(i)?)?;
                    s = s.times(t);
                    acc = d;
                }
                Ok((s, acc))
            };
            let delta = Scalar { two: 0, delta: 1 };
            let two = Scalar { two: 1, delta: 0 };
            let end_pair = |i: u8, j: u8| {
                let (a, b) = (i.min(j), i.max(j));
                (a, b) == (1, 2) || (a, b) == (rank - 1, rank)
            };
            for i in 1..=rank {
                r.record(prod(&[i, i])? == (delta, simple(i)?), || {
                    format!("(c1) i={i}")
                });
                for j in 1..=rank {
                    if i.abs_diff(j) > 1 {
                        r.record(prod(&[i, j])? == prod(&[j, i])?, || {
                            format!("(c2) i={i} j={j}")
                        });
                    }
                    if i.abs_diff(j) == 1 && (2..rank).contains(&i) && (2..rank).contains(&j) {
                        r.record(prod(&[i, j, i])? == (Scalar::ONE, simple(i)?), || {
                            format!("(c3) i={i} j={j}")
                        });
                    }
                    if i.abs_diff(j) == 1 && end_pair(i, j) {
                        let (s, d) = prod(&[i, j])?;
                        r.record(s.is_one() && prod(&[i, j, i, j])? == (two, d), || {
                            format!("(c4) i={i} j={j}")
                        });
                    }
                }
            }
        }
    }
    Ok(r)
}

fn catalan_number(m: usize) -> usize {
    (0..m).fold(1usize, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

fn catalan(cfg: &VerifyConfig) -> Result<Report> {
    if cfg.spec.family != Family::TypeA {
        return Err(Error::input("suite catalan needs type A"));
    }
    let mut r = Report::new(Suite::Catalan, cfg);
    let hs = heaps(&VerifyConfig {
        max_len: None,
        ..*cfg
    })?;
    let expected = catalan_number(cfg.spec.n + 2);
    let table = theta_inverse_table(cfg.spec.n)?;
    r.count = Some(hs.len());
    r.record(hs.len() == expected, || {
        format!("{} FC elements, expected {expected}", hs.len())
    });
    r.record(table.len() == expected, || {
        format!(
            "theta inverse table has {} diagrams, expected {expected}",
            table.len()
        )
    });
    Ok(r)
}

fn dec_theta(cfg: &VerifyConfig) -> Result<Report> {
    require_ctilde(cfg, Suite::DecTheta)?;
    let hs = heaps(cfg)?;
    Ok(sharded(Suite::DecTheta, cfg, &hs, |_, h, r| {
        let ours = dec(h);
        let theirs = theta_tilde_with_scalar(&h.to_word());
        let ok = matches!((&ours, &theirs), (Ok(a), Ok((s, b))) if s.is_one() && a == b);
        r.record(ok, || match (ours, theirs) {
            (Ok(a), Ok((s, b))) => format!("{}: dec {a} vs theta {s} {b}", word_of(h)),
            (a, b) => format!("{}: dec {:?} theta {:?}", word_of(h), a.err(), b.err()),
        });
    }))
}

fn injective(cfg: &VerifyConfig) -> Result<Report> {
    require_ctilde(cfg, Suite::Injective)?;
    let hs = heaps(cfg)?;
    let mut r = Report::new(Suite::Injective, cfg);
    let mut seen: HashMap<DecDiagram, usize> = HashMap::with_capacity(hs.len());
    for (i, h) in hs.iter().enumerate() {
        match dec(h) {
            Ok(d) => match seen.get(&d) {
                Some(&j) => r.record(hs[j] == *h, || {
                    format!("{} and {} share the image {d}", word_of(&hs[j]), word_of(h))
                }),
                None => {
                    seen.insert(d, i);
                    r.record(true, String::new);
                }
            },
            Err(e) => r.record(false, || format!("{}: {e}", word_of(h))),
        }
    }
    r.count = Some(seen.len());
    Ok(r)
}

fn roundtrip(cfg: &VerifyConfig) -> Result<Report> {
    require_ctilde(cfg, Suite::Roundtrip)?;
    let hs = heaps(cfg)?;
    Ok(sharded(Suite::Roundtrip, cfg, &hs, |_, h, r| {
        let d = dec(h);
        let back = d.as_ref().ok().map(|d| (d.is_admissible(), invert(d)));
        let ok = matches!(&back, Some((true, Ok(x))) if x == h);
        r.record(ok, || match (d, back) {
            (Ok(d), Some((adm, inv))) => format!(
                "{}: image {d} admissible={adm} inverse {:?}",
                word_of(h),
                inv.map(|x| x.word().to_vec())
            ),
            (d, _) => format!("{}: dec failed {:?}", word_of(h), d.err()),
        });
    }))
}

fn reduction_order(cfg: &VerifyConfig) -> Result<Report> {
    require_ctilde(cfg, Suite::ReductionOrder)?;
    let hs = heaps(cfg)?;
    let seed = cfg.seed;
    let orders = cfg.orders;
    Ok(sharded(Suite::ReductionOrder, cfg, &hs, |i, h, r| {
        let oracle = tau_alpha(h);
        let first = reduce(h);
        let ok = matches!((&oracle, &first), (Ok(a), Ok(b)) if a == b);
        r.record(ok, || {
            format!(
                "{}: reduce {:?} vs diagram {:?}",
                word_of(h),
                first.clone().map(|x| (x.0.word().to_vec(), x.1)),
                oracle.clone().map(|x| (x.0.word().to_vec(), x.1))
            )
        });
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        for o in 0..orders {
            let other = reduce_random(h, &mut rng);
            let same = matches!((&first, &other), (Ok(a), Ok(b)) if a == b);
            r.record(same, || {
                format!("{}: random order {o} disagrees", word_of(h))
            });
        }
    }))
}

fn snakes_bijection(cfg: &VerifyConfig) -> Result<Report> {
    require_ctilde(cfg, Suite::SnakesBijection)?;
    let hs: Vec<Heap> = heaps(cfg)?
        .into_iter()
        .filter(Heap::is_alternating)
        .collect();
    Ok(sharded(Suite::SnakesBijection, cfg, &hs, |_, h, r| {
        let bij = edge_bijection(h);
        r.record(bij.is_ok(), || format!("{}: {:?}", word_of(h), bij.err()));
        let v = fork_order_violations(h);
        let ok = matches!(&v, Ok(v) if v.is_empty());
        r.record(ok, || format!("{}: {:?}", word_of(h), v));
    }))
}

pub fn run(suite: Suite, cfg: &VerifyConfig) -> Result<Report> {
    match suite {
        Suite::Relations => relations(cfg),
        Suite::DecTheta => dec_theta(cfg),
        Suite::Injective => injective(cfg),
        Suite::Roundtrip => roundtrip(cfg),
        Suite::ReductionOrder => reduction_order(cfg),
        Suite::SnakesBijection => snakes_bijection(cfg),
        Suite::Catalan => catalan(cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_numbers() {
        assert_eq!(
            (1..=6).map(catalan_number).collect::<Vec<_>>(),
            [1, 2, 5, 14, 42, 132]
        );
    }

    #[test]
    fn small_suites_pass() {
        let cfg = VerifyConfig::new(CoxeterSpec::ctilde(2), Some(6));
        for s in [
            Suite::Relations,
            Suite::DecTheta,
            Suite::Roundtrip,
            Suite::SnakesBijection,
        ] {
            assert!(run(s, &cfg).unwrap().passed(), "{s}");
        }
        let a = VerifyConfig::new(CoxeterSpec::type_a(2), None);
        assert_eq!(run(Suite::Catalan, &a).unwrap().count, Some(14));
    }

    #[test]
    fn suite_names_parse() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
    }
}
