//! The `verify` suite: free-algebra identities, relation membership in
//! `N_{3,d}` over F_2, oracle comparisons and cross-field bounds.

use std::time::Instant;

use nilcrunch_core::exactla::CoefficientRing;
use nilcrunch_core::identities::{expand, run_suite, Expr};
use nilcrunch_core::linearize::FieldSpec;
use nilcrunch_core::relspace::{build_relation_space, nilpotency_degree, BuildOptions, Nilpotency};
use nilcrunch_core::Error;

use crate::compare_with_oracle;
use crate::report::{Check, CheckStatus, VerifyReport, SCHEMA};

fn check(name: &str, outcome: Result<(bool, String), Error>) -> Check {
    let (status, detail) = match outcome {
        Ok((true, d)) => (CheckStatus::Pass, d),
        Ok((false, d)) => (CheckStatus::Fail, d),
        Err(e @ (Error::BudgetExceeded { .. } | Error::Cancelled { .. })) => (CheckStatus::Skipped, e.to_string()),
        Err(e) => (CheckStatus::Fail, e.to_string()),
    };
    Check {
        name: name.to_string(),
        status,
        detail,
    }
}

fn degree(n: u32, d: usize, field: FieldSpec, opts: &BuildOptions) -> Result<usize, Error> {
    match nilpotency_degree(n, d, field, 16, opts)?.outcome {
        Nilpotency::Reached { c } => Ok(c),
        Nilpotency::NotReached { dmax, .. } => Err(Error::BudgetExceeded {
            what: format!("C_{{{n},{d}}} over {field} not reached by {dmax}"),
            checkpoint: None,
        }),
    }
}

/// Relation membership in `N_{3,d}` over F_2 at the nilpotency degree 6.
fn membership(d: usize, e: &Expr, opts: &BuildOptions) -> Result<bool, Error> {
    let f2 = FieldSpec::finite(2)?;
    let f = expand(e, CoefficientRing::PrimeField(2))?;
    build_relation_space(3, d, f2, 6, opts)?.is_relation(&f)
}

pub(crate) fn membership_checks(opts: &BuildOptions) -> Vec<Check> {
    let x = || Expr::x(0);
    let y = || Expr::x(1);
    let z = || Expr::x(2);
    let lin = |t: &[u32], a| Expr::lin(t, a).expect("valid exponents");
    let symmetric_sum = Expr::sum([lin(&[2, 1], vec![x(), y()]), lin(&[1, 2], vec![x(), y()])]);
    let bare = lin(&[2, 1], vec![x(), y()]);
    let left_shift = Expr::sub(
        Expr::prod([x(), lin(&[2, 1], vec![y(), z()])]),
        lin(&[2, 1], vec![y(), Expr::word(&[0, 2])]),
    );
    let right_shift = Expr::sub(
        Expr::prod([lin(&[2, 1], vec![x(), y()]), z()]),
        lin(&[2, 1], vec![x(), Expr::word(&[1, 2])]),
    );
    let want = |e: &Expr, d: usize, member: bool| {
        membership(d, e, opts).map(|m| (m == member, format!("member: {m}, expected {member}")))
    };
    vec![
        check("membership L21(x,y)+L12(x,y) in N_{3,2} over F2", want(&symmetric_sum, 2, true)),
        check("membership x L21(y,z) - L21(y,xz) in N_{3,3} over F2", want(&left_shift, 3, true)),
        check("membership L21(x,y) z - L21(x,yz) in N_{3,3} over F2", want(&right_shift, 3, true)),
        check("non-membership L21(x,y) in N_{3,2} over F2", want(&bare, 2, false)),
    ]
}

pub(crate) fn oracle_checks(opts: &BuildOptions) -> Vec<Check> {
    [(2u32, 2usize, 2u64, 4usize, 2usize), (3, 2, 2, 6, 2), (3, 2, 3, 7, 2)]
        .into_iter()
        .map(|(n, d, q, t, k)| {
            let r = compare_with_oracle(n, d, q, t, k, opts).map(|r| {
                (
                    r.equal,
                    format!("generator rank {}, oracle rank {}", r.generator_rank, r.oracle_rank),
                )
            });
            check(&format!("oracle n={n} d={d} q={q} D={t} k={k}"), r)
        })
        .collect()
}

pub(crate) fn bound_checks(opts: &BuildOptions) -> Vec<Check> {
    let field = |s: &str| s.parse::<FieldSpec>().expect("valid field");
    let pair = |n, d, a: &str, b: &str| -> Result<(usize, usize), Error> {
        Ok((degree(n, d, field(a), opts)?, degree(n, d, field(b), opts)?))
    };
    let mut out = Vec::new();
    out.push(check(
        "sandwich n=3 d=2: C over F2 in {C, C+1} of infinite char 2",
        pair(3, 2, "q2", "inf2").map(|(f, l)| (f == l || f == l + 1, format!("C = {f}, infinite C = {l}"))),
    ));
    out.push(check(
        "field with at least n elements n=3 d=2: C over F3 equals infinite char 3",
        pair(3, 2, "q3", "inf3").map(|(f, l)| (f == l, format!("C = {f}, infinite C = {l}"))),
    ));
    out.push(check(
        "field with at least n elements n=3 d=2: C over F4 equals infinite char 2",
        pair(3, 2, "q4", "inf2").map(|(f, l)| (f == l, format!("C = {f}, infinite C = {l}"))),
    ));
    out.push(check(
        "finite field bound n=3 d=2: C over F2 at least infinite char 2",
        pair(3, 2, "q2", "inf2").map(|(f, l)| (f >= l, format!("C = {f}, infinite C = {l}"))),
    ));
    for d in [2usize, 3] {
        let r = (|| -> Result<(bool, String), Error> {
            let (f, l) = pair(3, d, "q2", "inf2")?;
            let total = |field: &str, c| -> Result<usize, Error> {
                let s = build_relation_space(3, d, self::field_of(field)?, c, opts)?;
                Ok(s.quotient_dims().iter().sum())
            };
            let delta = total("q2", f)? as i64 - total("inf2", l)? as i64;
            let want = (d * (d - 1) / 2) as i64;
            Ok((delta == want, format!("dimension delta {delta}, expected {want}")))
        })();
        out.push(check(&format!("dimension delta n=3 d={d} F2 against infinite char 2"), r));
    }
    out
}

fn field_of(s: &str) -> Result<FieldSpec, Error> {
    s.parse()
}

pub(crate) fn run(n_max: u32, opts: &BuildOptions, started: Instant) -> VerifyReport {
    let mut opts = opts.clone();
    opts.checkpoint = None;
    let (identities, mut checks) = match run_suite(3, n_max) {
        Ok(list) => (list, Vec::new()),
        Err(e) => (Vec::new(), vec![check("identity suite", Err(e))]),
    };
    checks.extend(membership_checks(&opts));
    checks.extend(oracle_checks(&opts));
    checks.extend(bound_checks(&opts));
    let pass = identities.iter().all(|e| e.pass) && checks.iter().all(|c| c.status != CheckStatus::Fail);
    VerifyReport {
        schema: SCHEMA,
        command: "verify".into(),
        pass,
        checks,
        identities,
        elapsed_ms: started.elapsed().as_millis() as u64,
    }
}
