//! Algebraic laws of the sort algebras, one randomized runner per group.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::fmt::Debug;

use kgq_core::engine::{equal, RtVal};
use kgq_core::{
    Annotations, Causality, Duration, Instant, Iri, Provenance, SequenceNode, SpaceRegion,
    TimeInterval, ValidityContext, Value,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRng, TestRunner};

use super::gen::*;

pub const CASES: u32 = 1000;

#[derive(Debug, Clone)]
pub struct GroupOutcome {
    pub group: &'static str,
    pub laws: usize,
    pub cases: u32,
    pub result: Result<(), String>,
}

fn run<S>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S: Strategy,
    S::Value: Debug,
{
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let rng = TestRng::deterministic_rng(config.rng_algorithm);
    let mut runner = TestRunner::new_with_rng(config, rng);
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn implies(a: bool, b: bool) -> bool {
    !a || b
}

fn eq_rt(a: RtVal, b: RtVal) -> bool {
    equal(&a, &b).expect("comparable")
}

// ------------------------------------------------------------------ value

pub fn value_laws(cases: u32) -> GroupOutcome {
    let strat = (value(), value(), value(), any::<(bool, bool)>(), entity());
    let result = run(cases, strat, |(v1, v2, v3, (same12, same23), i)| {
        let v2 = if same12 { v1.clone() } else { v2 };
        let v3 = if same23 { v2.clone() } else { v3 };
        let e = |a: &Value, b: &Value| eq_rt(RtVal::Value(a.clone()), RtVal::Value(b.clone()));
        prop_assert!(e(&v1, &v1));
        prop_assert!(implies(e(&v1, &v2) && e(&v2, &v3), e(&v1, &v3)));
        prop_assert!(implies(e(&v1, &v2), e(&v2, &v1)));
        prop_assert!(!e(&Value::Entity(i.clone()), &Value::Undefined));
        prop_assert!(!e(&Value::Undefined, &Value::Entity(i)));
        Ok(())
    });
    GroupOutcome {
        group: "value",
        laws: 5,
        cases,
        result,
    }
}

// ---------------------------------------------------------------- instant

fn instant_of(seconds: i64) -> Instant {
    let text = Instant::At(seconds).to_xsd().expect("defined");
    Instant::parse(&text).expect("round trip")
}

pub fn instant_laws(cases: u32) -> GroupOutcome {
    let strat = (day(), day(), instant(), instant(), any::<bool>());
    let result = run(cases, strat, |(dx, dy, i1, i2, same)| {
        let (x, y) = (dx * DAY, dy * DAY);
        let (ix, iy) = (instant_of(x), instant_of(y));
        let u = Instant::Undefined;
        prop_assert_eq!(ix.min(iy), instant_of(x.min(y)));
        prop_assert_eq!(ix.max(iy), instant_of(x.max(y)));
        prop_assert_eq!(i1.min(i1), i1);
        prop_assert_eq!(i1.max(i1), i1);
        prop_assert_eq!(ix.min(u), u);
        prop_assert_eq!(ix.max(u), u);
        prop_assert_eq!(u.min(iy), u);
        prop_assert_eq!(u.max(iy), u);
        if x != y {
            prop_assert_eq!(ix.lt(iy).unwrap(), x.min(y) == x);
        }
        prop_assert_eq!(ix.le(iy).unwrap(), ix.lt(iy).unwrap() || x == y);
        prop_assert_eq!(eq_rt(RtVal::Instant(ix), RtVal::Instant(iy)), x == y);
        let i2 = if same { i1 } else { i2 };
        if i1 == i2 {
            prop_assert_eq!(i1.union(i2), i1);
            prop_assert_eq!(i1.inter(i2), i1);
        } else {
            prop_assert_eq!(i1.union(i2), u);
            prop_assert_eq!(i1.inter(i2), u);
        }
        prop_assert_eq!(i1 == i2, i1.test_intersect(i2));
        prop_assert_eq!(ix.plus(iy.minus(ix)), iy);
        prop_assert_eq!(u.minus(ix), Duration::Undefined);
        Ok(())
    });
    GroupOutcome {
        group: "instant",
        laws: 17,
        cases,
        result,
    }
}

// --------------------------------------------------------------- interval

fn inside(x: Instant, t: &TimeInterval) -> bool {
    t.contains(x).expect("defined instant")
}

fn not_lt(a: Instant, b: Instant) -> bool {
    !a.lt(b).expect("defined")
}

pub fn interval_laws(cases: u32) -> GroupOutcome {
    let strat = (
        defined_instant(),
        (defined_instant(), defined_instant()),
        (defined_instant(), defined_instant()),
        duration(),
        interval(),
        interval(),
    );
    let result = run(cases, strat, |(x, (a, b), (c, d2), d, t1, t2)| {
        let (x1, x2) = (a.min(b), a.max(b));
        let (y1, y2) = (c.min(d2), c.max(d2));
        let u = Instant::Undefined;
        let univ = TimeInterval::universal();
        let i12 = TimeInterval::new(x1, x2).unwrap();
        let iy = TimeInterval::new(y1, y2).unwrap();
        let id = TimeInterval::with_duration(x1, d).unwrap();

        if !t1.is_bottom() && !t2.is_bottom() {
            prop_assert_eq!(
                t1 == t2,
                t1.start_time() == t2.start_time() && t1.end_time() == t2.end_time()
            );
        }
        prop_assert_eq!(inside(x, &i12), not_lt(x, x1) && not_lt(x2, x));
        prop_assert_eq!(inside(x, &TimeInterval::new(u, x2).unwrap()), not_lt(x2, x));
        prop_assert_eq!(inside(x, &TimeInterval::new(x1, u).unwrap()), not_lt(x, x1));
        prop_assert!(inside(x, &univ));
        prop_assert_eq!(inside(x, &id), not_lt(x, x1) && not_lt(x1.plus(d), x));
        let overlap = |s1: Instant, e1: Instant, s2: Instant, e2: Instant| {
            (s1.le(e2).unwrap() && s2.le(e1).unwrap()) || (s2.le(e1).unwrap() && s1.le(e2).unwrap())
        };
        prop_assert_eq!(i12.disjoint(&iy), !overlap(x1, x2, y1, y2));
        prop_assert_eq!(t1.union(&univ), univ);
        if !t1.is_bottom() {
            prop_assert_eq!(univ.union(&t1), univ);
        }
        if !i12.disjoint(&iy) {
            prop_assert_eq!(
                i12.union(&iy),
                TimeInterval::new(x1.min(y1), x2.max(y2)).unwrap()
            );
        }
        prop_assert_eq!(i12.start_time(), x1);
        prop_assert_eq!(id.start_time(), x1);
        prop_assert_eq!(univ.start_time(), u);
        prop_assert_eq!(i12.end_time(), x2);
        prop_assert_eq!(univ.end_time(), u);
        prop_assert_eq!(id.end_time(), x1.plus(d));
        prop_assert_eq!(TimeInterval::new(u, x2).unwrap().start_time(), u);
        prop_assert_eq!(TimeInterval::new(x1, u).unwrap().end_time(), u);
        prop_assert_eq!(i12.duration(), x2.minus(x1));
        prop_assert_eq!(id.duration(), d);
        prop_assert_eq!(univ.duration(), Duration::Undefined);
        if !t2.is_bottom() {
            prop_assert_eq!(i12.incl(&t2), inside(x1, &t2) && inside(x2, &t2));
            let endpoint_in_i12 = |e: Instant| e.is_defined() && inside(e, &i12);
            prop_assert_eq!(
                i12.test_intersect(&t2),
                inside(x1, &t2)
                    || inside(x2, &t2)
                    || endpoint_in_i12(t2.start_time())
                    || endpoint_in_i12(t2.end_time())
            );
            prop_assert_eq!(i12.test_intersect(&t2), t2.test_intersect(&i12));
        }
        if t1.disjoint(&t2) && !t1.is_bottom() && !t2.is_bottom() {
            prop_assert_eq!(t1.union(&t2), univ);
        }
        Ok(())
    });
    GroupOutcome {
        group: "interval",
        laws: 25,
        cases,
        result,
    }
}

// ------------------------------------------------------------------ space

pub fn space_laws(cases: u32) -> GroupOutcome {
    let strat = (space(), space(), space(), region());
    let result = run(cases, strat, |(s1, s2, s3, r)| {
        let c = containment();
        let ins = |a: &SpaceRegion, b: &SpaceRegion| c.inside(a, b).unwrap();
        prop_assert!(implies(ins(&s1, &s2) && ins(&s2, &s3), ins(&s1, &s3)));
        prop_assert!(ins(&s1, &s1));
        let i23 = c.inter(&s2, &s3).unwrap();
        let u23 = c.union(&s2, &s3).unwrap();
        prop_assert_eq!(ins(&s1, &i23), ins(&s1, &s2) && ins(&s1, &s3));
        let atom = SpaceRegion::region(r);
        prop_assert_eq!(ins(&atom, &u23), ins(&atom, &s2) || ins(&atom, &s3));
        prop_assert_eq!(ins(&s1, &s2) && ins(&s2, &s1), s1 == s2);
        prop_assert_eq!(c.inter(&s1, &s2).unwrap(), c.inter(&s2, &s1).unwrap());
        prop_assert_eq!(c.union(&s1, &s2).unwrap(), c.union(&s2, &s1).unwrap());
        Ok(())
    });
    GroupOutcome {
        group: "space",
        laws: 7,
        cases,
        result,
    }
}

// --------------------------------------------------------------- validity

pub fn validity_laws(cases: u32) -> GroupOutcome {
    let strat = (
        (validity(), validity(), validity()),
        (interval(), interval(), interval()),
        (space(), space(), space()),
    );
    let result = run(cases, strat, |((c, c1, c2), (t, t1, t2), (s, s1, s2))| {
        let k = containment();
        let empty = ValidityContext::empty();
        let tv = ValidityContext::time_validity;
        let sv = ValidityContext::space_validity;
        let ts = ValidityContext::timespace;
        let u = |a: &ValidityContext, b: &ValidityContext| a.union(b, &k).unwrap();
        let i = |a: &ValidityContext, b: &ValidityContext| a.inter(b, &k).unwrap();
        let su = |a: &SpaceRegion, b: &SpaceRegion| k.union(a, b).unwrap();
        let si = |a: &SpaceRegion, b: &SpaceRegion| k.inter(a, b).unwrap();

        prop_assert_eq!(empty.set_time(t), tv(t));
        prop_assert_eq!(tv(t1).set_time(t2), tv(t2));
        prop_assert_eq!(sv(s.clone()).set_time(t), ts(t, s.clone()));
        prop_assert_eq!(ts(t, s.clone()).set_time(t2), ts(t2, s.clone()));
        prop_assert_eq!(empty.set_space(s.clone()), sv(s.clone()));
        prop_assert_eq!(tv(t).set_space(s.clone()), ts(t, s.clone()));
        prop_assert_eq!(sv(s.clone()).set_space(s2.clone()), sv(s2.clone()));
        prop_assert_eq!(ts(t, s.clone()).set_space(s2.clone()), ts(t, s2.clone()));
        prop_assert_eq!(tv(t1).extract_time(), t1);
        prop_assert_eq!(ts(t, s.clone()).extract_time(), t);
        prop_assert!(sv(s.clone()).extract_time().is_universal());
        prop_assert_eq!(sv(s.clone()).extract_space(), s.clone());
        prop_assert_eq!(ts(t, s.clone()).extract_space(), s.clone());

        prop_assert_eq!(u(&empty, &c), empty.clone());
        prop_assert_eq!(u(&c, &empty), empty.clone());
        prop_assert_eq!(u(&tv(t1), &sv(s2.clone())), empty.clone());
        prop_assert_eq!(u(&tv(t1), &tv(t2)), tv(t1.union(&t2)));
        prop_assert_eq!(u(&sv(s1.clone()), &sv(s2.clone())), sv(su(&s1, &s2)));
        prop_assert_eq!(u(&sv(s1.clone()), &tv(t2)), empty.clone());
        prop_assert_eq!(
            u(&ts(t1, s1.clone()), &ts(t2, s2.clone())),
            ts(t1.union(&t2), su(&s1, &s2))
        );
        // Mixed time/space cases: an unconstrained component absorbs.
        prop_assert_eq!(u(&tv(t1), &ts(t2, s2.clone())), tv(t1.union(&t2)));
        prop_assert_eq!(u(&sv(s1.clone()), &ts(t2, s2.clone())), sv(su(&s1, &s2)));
        prop_assert_eq!(u(&ts(t1, s1.clone()), &sv(s2.clone())), sv(su(&s1, &s2)));
        prop_assert_eq!(u(&ts(t1, s1.clone()), &tv(t2)), tv(t1.union(&t2)));

        prop_assert_eq!(i(&empty, &c), c.clone());
        prop_assert_eq!(i(&c, &empty), c.clone());
        prop_assert_eq!(i(&tv(t1), &sv(s2.clone())), ts(t1, s2.clone()));
        prop_assert_eq!(i(&tv(t1), &tv(t2)), tv(t1.inter(&t2)));
        prop_assert_eq!(
            i(&tv(t1), &ts(t2, s2.clone())),
            ts(t1.inter(&t2), s2.clone())
        );
        prop_assert_eq!(i(&sv(s1.clone()), &sv(s2.clone())), sv(si(&s1, &s2)));
        prop_assert_eq!(i(&sv(s1.clone()), &tv(t2)), ts(t2, s1.clone()));
        prop_assert_eq!(
            i(&sv(s1.clone()), &ts(t2, s2.clone())),
            ts(t2, si(&s1, &s2))
        );
        prop_assert_eq!(
            i(&ts(t1, s1.clone()), &sv(s2.clone())),
            ts(t1, si(&s1, &s2))
        );
        prop_assert_eq!(
            i(&ts(t1, s1.clone()), &tv(t2)),
            ts(t1.inter(&t2), s1.clone())
        );
        prop_assert_eq!(
            i(&ts(t1, s1.clone()), &ts(t2, s2.clone())),
            ts(t1.inter(&t2), si(&s1, &s2))
        );

        prop_assert_eq!(
            c1.test_intersect(&c2, &k).unwrap(),
            !i(&c1, &c2).is_bottom()
        );
        prop_assert_eq!(
            c1.incl(&c2, &k).unwrap(),
            c1.extract_time().incl(&c2.extract_time())
                && k.inside(&c1.extract_space(), &c2.extract_space()).unwrap()
        );
        prop_assert_eq!(c.set_time(t1).extract_time(), t1);
        prop_assert_eq!(c.set_space(s.clone()).extract_space(), s.clone());
        prop_assert_eq!(
            i(&c1, &c2).extract_time(),
            c1.extract_time().inter(&c2.extract_time())
        );
        prop_assert_eq!(
            i(&c1, &c2).extract_space(),
            si(&c1.extract_space(), &c2.extract_space())
        );
        prop_assert_eq!(
            u(&c1, &c2).extract_time(),
            c1.extract_time().union(&c2.extract_time())
        );
        prop_assert_eq!(
            u(&c1, &c2).extract_space(),
            su(&c1.extract_space(), &c2.extract_space())
        );
        let incl = |a: &ValidityContext, b: &ValidityContext| a.incl(b, &k).unwrap();
        prop_assert!(implies(incl(&c1, &c2) && incl(&c2, &c1), c1 == c2));
        let c2u = u(&c1, &c2);
        let c3u = u(&c2u, &c);
        prop_assert!(incl(&c1, &c2u) && incl(&c2u, &c3u) && incl(&c1, &c3u));
        prop_assert!(implies(incl(&c1, &c2) && incl(&c2, &c), incl(&c1, &c)));
        let c_copy = c.clone();
        prop_assert!(c == c_copy);
        prop_assert_eq!(c1 == c2, c2 == c1);
        prop_assert_eq!(
            c1 == c2,
            c1.extract_time() == c2.extract_time() && c1.extract_space() == c2.extract_space()
        );
        Ok(())
    });
    GroupOutcome {
        group: "validity context",
        laws: 48,
        cases,
        result,
    }
}

// -------------------------------------------------------------- causality

fn inv_set(set: &BTreeSet<Iri>, m: &kgq_core::InverseCauseMap) -> BTreeSet<Iri> {
    set.iter().filter_map(|e| m.invert(e)).collect()
}

pub fn causality_laws(cases: u32) -> GroupOutcome {
    let strat = (entity(), causality(), causality(), inverse_map());
    let result = run(cases, strat, |(e1, c1, c2, m)| {
        let add = |e: Option<Iri>, s: &BTreeSet<Iri>| {
            let mut s = s.clone();
            s.extend(e);
            s
        };
        prop_assert_eq!(
            c1 == c2,
            c1.get_end_cause() == c2.get_end_cause() && c1.get_has_cause() == c2.get_has_cause()
        );
        prop_assert!(Causality::empty().get_end_cause().is_empty());
        prop_assert!(Causality::empty().get_has_cause().is_empty());
        let ae = c1.add_end_cause([e1.clone()]);
        let ah = c1.add_has_cause([e1.clone()]);
        prop_assert_eq!(
            ae.get_end_cause(),
            &add(Some(e1.clone()), c1.get_end_cause())
        );
        prop_assert_eq!(ah.get_end_cause(), c1.get_end_cause());
        prop_assert_eq!(ae.get_has_cause(), c1.get_has_cause());
        prop_assert_eq!(
            ah.get_has_cause(),
            &add(Some(e1.clone()), c1.get_has_cause())
        );
        let un = c1.union(&c2);
        prop_assert_eq!(
            un.get_end_cause(),
            &c1.get_end_cause()
                .union(c2.get_end_cause())
                .cloned()
                .collect()
        );
        prop_assert_eq!(
            un.get_has_cause(),
            &c1.get_has_cause()
                .union(c2.get_has_cause())
                .cloned()
                .collect()
        );
        let inv_c1 = c1.inverse(&m);
        let (ae_inv, ah_inv) = (ae.inverse(&m), ah.inverse(&m));
        prop_assert_eq!(
            ae_inv.get_end_cause(),
            &add(m.invert(&e1), inv_c1.get_end_cause())
        );
        prop_assert_eq!(ah_inv.get_end_cause(), inv_c1.get_end_cause());
        prop_assert_eq!(ae_inv.get_has_cause(), inv_c1.get_has_cause());
        prop_assert_eq!(
            ah_inv.get_has_cause(),
            &add(m.invert(&e1), inv_c1.get_has_cause())
        );
        prop_assert_eq!(inv_c1.get_end_cause(), &inv_set(c1.get_end_cause(), &m));
        if m.is_involutive() {
            prop_assert_eq!(inv_c1.inverse(&m), c1);
        }
        Ok(())
    });
    GroupOutcome {
        group: "causality",
        laws: 15,
        cases,
        result,
    }
}

// --------------------------------------------------------------- sequence

pub fn sequence_laws(cases: u32) -> GroupOutcome {
    let strat = (entity(), entity(), 0u64..1000);
    let result = run(cases, strat, |(x, y, n)| {
        let s2 = SequenceNode::seq(x.clone(), y.clone());
        let s3 = SequenceNode::seq_with_ordinal_and_links(x.clone(), y.clone(), n);
        let wn = SequenceNode::with_next(x.clone());
        let wp = SequenceNode::with_prev(x.clone());
        let wo = SequenceNode::with_ordinal(n);
        prop_assert_eq!(s2.next(), Some(&y));
        prop_assert_eq!(s2.previous(), Some(&x));
        prop_assert_eq!(wn.next(), Some(&x));
        prop_assert_eq!(wp.next(), None);
        prop_assert_eq!(wn.previous(), None);
        prop_assert_eq!(wp.previous(), Some(&x));
        prop_assert_eq!(s3.ordinal(), Ok(n));
        prop_assert_eq!(wo.ordinal(), Ok(n));
        prop_assert!(wn.has_next());
        prop_assert!(s2.has_next());
        prop_assert!(s3.has_next());
        prop_assert!(wp.has_previous());
        prop_assert!(s2.has_previous());
        prop_assert!(s3.has_previous());
        prop_assert!(s3.has_ordinal());
        prop_assert!(wo.has_ordinal());
        Ok(())
    });
    GroupOutcome {
        group: "sequence",
        laws: 16,
        cases,
        result,
    }
}

// ------------------------------------------------------------- provenance

pub fn provenance_laws(cases: u32) -> GroupOutcome {
    let strat = (provenance(), provenance(), entities(), entity());
    let result = run(cases, strat, |(p1, p2, srcs, x)| {
        let union: BTreeSet<Iri> = p1.get_sources().union(p2.get_sources()).cloned().collect();
        let p12 = p1.union(&p2);
        prop_assert_eq!(p12.get_sources(), &union);
        let added: BTreeSet<Iri> = p1.get_sources().union(&srcs).cloned().collect();
        let p1s = p1.add_sources(srcs);
        prop_assert_eq!(p1s.get_sources(), &added);
        prop_assert!(Provenance::empty().get_sources().is_empty());
        let single = BTreeSet::from([x.clone()]);
        prop_assert_eq!(
            single.union(&single).cloned().collect::<BTreeSet<_>>(),
            single
        );
        Ok(())
    });
    GroupOutcome {
        group: "provenance",
        laws: 4,
        cases,
        result,
    }
}

// ------------------------------------------------------------ annotations

pub fn annotation_laws(cases: u32) -> GroupOutcome {
    let strat = (annotations(), qualifier(), qualifier(), value());
    let result = run(cases, strat, |(a, q, other, v)| {
        let added = a.add(q.clone(), v.clone());
        let mut expect = a.get(&q);
        expect.insert(v);
        prop_assert_eq!(added.get(&q), expect);
        if other != q {
            prop_assert_eq!(added.get(&other), a.get(&other));
        }
        prop_assert!(Annotations::empty().get(&q).is_empty());
        prop_assert_eq!(added.get_relation(), added.get(&Iri::wd("P2309")));
        prop_assert_eq!(added.get_class(), added.get(&Iri::wd("P2308")));
        Ok(())
    });
    GroupOutcome {
        group: "annotations",
        laws: 5,
        cases,
        result,
    }
}

pub fn all_groups(cases: u32) -> Vec<GroupOutcome> {
    vec![
        value_laws(cases),
        instant_laws(cases),
        interval_laws(cases),
        space_laws(cases),
        validity_laws(cases),
        causality_laws(cases),
        sequence_laws(cases),
        provenance_laws(cases),
        annotation_laws(cases),
    ]
}
