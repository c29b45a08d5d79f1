use std::time::Instant;

use liepair_core::atiyah::AtiyahSetup;
use liepair_core::hpl::toy::{random_toy, Toy};
use liepair_core::hpl::{exterior_contraction, hom_contraction, perturb, tensor_contraction, CheckResult, VerifyReport, DEFAULT_MAX_ITER};
use liepair_core::liepair::{ConnectionTable, ModuleTag};
use liepair_core::pidgla::PullbackAlgebroid;
use liepair_core::todd::{ce_cohomology_dims, Exactness, Side, ToddSetup};
use liepair_core::{Model, Rational};

use crate::report::Record;
use crate::{Command, Gamma, Options, UsageError};

const TOY_SEEDS: u64 = 20;
const DEFAULT_EXTERIOR_K: usize = 3;

pub fn table(model: &Model, opts: &Options) -> ConnectionTable<Rational> {
    match opts.gamma {
        Gamma::Default => ConnectionTable::default_for(model),
        Gamma::Random => ConnectionTable::random_for(model, opts.seed),
    }
}

/// A second table to compare against for connection independence.
fn other_table(model: &Model, opts: &Options) -> ConnectionTable<Rational> {
    match opts.gamma {
        Gamma::Default => ConnectionTable::random_for(model, opts.seed),
        Gamma::Random => ConnectionTable::default_for(model),
    }
}

fn timed(opts: &Options, f: impl FnOnce() -> Vec<Record>) -> Vec<Record> {
    let start = Instant::now();
    let mut recs = f();
    if opts.timing {
        let ms = start.elapsed().as_secs_f64() * 1e3;
        for r in &mut recs {
            r.timing_ms = Some(ms);
        }
    }
    recs
}

fn from_check(prefix: &str, c: &CheckResult) -> Record {
    Record::check(format!("{}.{}", prefix, c.name), c.witness.clone().or_else(|| (!c.ok).then(|| "failed".to_string())))
}

fn from_report(id: impl Into<String>, r: &VerifyReport) -> Record {
    let rec = if r.all_ok() { Record::pass(id) } else { Record::fail(id, r.summary()) };
    rec.with_value(format!("{} identities", r.checks.len()))
}

pub fn dispatch(command: Command, model: &Model, opts: &Options) -> Result<Vec<Record>, UsageError> {
    if command == Command::Check {
        return Ok(timed(opts, || check(model, opts)));
    }
    if command == Command::Report {
        let mut out = Vec::new();
        for c in [Command::Check, Command::HplVerify, Command::Atiyah, Command::Compare, Command::Todd, Command::Cohomology] {
            out.extend(dispatch(c, model, opts)?);
        }
        return Ok(out);
    }
    if let Err(e) = model.validate() {
        return Ok(vec![Record::fail("model.valid", e.to_string())]);
    }
    if let Some(k) = opts.max_k {
        if command == Command::Todd && k > model.r() {
            return Err(UsageError::Usage(format!("--max-k {} exceeds r = {}", k, model.r())));
        }
    }
    Ok(match command {
        Command::Atiyah => timed(opts, || atiyah(model, opts)),
        Command::Compare => timed(opts, || compare(model, opts)),
        Command::Todd => timed(opts, || todd(model, opts)),
        Command::HplVerify => timed(opts, || hpl_verify(model, opts)),
        Command::Cohomology => timed(opts, || cohomology(model)),
        Command::Check | Command::Report => unreachable!(),
    })
}

fn check(model: &Model, opts: &Options) -> Vec<Record> {
    let mut out: Vec<Record> = model.check_all().into_iter().map(|c| Record::check(format!("model.{}", c.invariant), c.witness)).collect();
    out.push(Record::check("gamma.admissible", table(model, opts).validate(model).err().map(|e| e.to_string())));
    out
}

fn setup_or_fail(model: &Model) -> Result<AtiyahSetup<Rational>, Record> {
    AtiyahSetup::new(model).map_err(|e| Record::fail("setup.perturbed_contraction", e.to_string()))
}

fn atiyah(model: &Model, opts: &Options) -> Vec<Record> {
    let s = match setup_or_fail(model) {
        Ok(s) => s,
        Err(r) => return vec![r],
    };
    let t = table(model, opts);
    let at = s.pair_atiyah(&t);
    let big_at = s.dgla_atiyah(&t);
    let mut out = vec![
        from_check("atiyah.pair", &s.pair_closedness(&at)).with_value(at.display(s.small())),
        from_check("atiyah.dgla", &s.q_closedness(&big_at)),
        from_check("atiyah.dgla", &s.tensoriality(&t, &big_at, 1)),
    ];
    out.extend(s.connection_properties(&t).iter().map(|c| from_check("atiyah.connection", c)));
    out
}

fn compare(model: &Model, opts: &Options) -> Vec<Record> {
    let s = match setup_or_fail(model) {
        Ok(s) => s,
        Err(r) => return vec![r],
    };
    let cmp = s.compare_projection(&table(model, opts));
    let rec = if cmp.equal { Record::pass("compare.projected_cocycle") } else { Record::fail("compare.projected_cocycle", cmp.residual_display.clone()) };
    vec![rec.with_value(format!("residual {}", cmp.residual_display))]
}

fn todd(model: &Model, opts: &Options) -> Vec<Record> {
    let s = match ToddSetup::new(model) {
        Ok(s) => s,
        Err(e) => return vec![Record::fail("setup.perturbed_contraction", e.to_string())],
    };
    let t = table(model, opts);
    let kmax = opts.max_k.unwrap_or(model.r());
    let mut out: Vec<Record> = s.supertrace_identity_check().iter().map(|c| from_check("todd.trace", c)).collect();
    out.extend(s.multiplicativity_check(0).iter().map(|c| from_check("todd.t_hat", c)));
    for side in [Side::Pair, Side::Dgla] {
        let id = format!("todd.cocycle.{}", side);
        out.push(match s.todd_cocycle(&t, side, kmax) {
            Ok(comps) => {
                let sp = s.spaces(side);
                let shown: Vec<String> = comps.iter().enumerate().map(|(k, c)| format!("{}: {}", k, c.display(sp.forms(k)))).collect();
                Record::pass(id).with_value(shown.join("; "))
            }
            Err(e) => Record::fail(id, e.to_string()),
        });
    }
    if !model.is_point() {
        out.push(Record::skipped("todd.class", format!("class-level comparison needs a point chart, n = {}", model.n())));
        out.push(Record::skipped("todd.connection_independence", format!("needs a point chart, n = {}", model.n())));
        return out;
    }
    for k in 0..=kmax {
        let id = format!("todd.class.{}", k);
        out.push(match s.class_comparison(&t, k) {
            Ok(Exactness::Exact { witness }) => Record::pass(id).with_value(format!("witness {}", witness.display(s.big.forms(k)))),
            Ok(Exactness::NotExact { functional }) => Record::fail(id, format!("obstruction functional {:?}", functional.iter().map(|v| v.to_string()).collect::<Vec<_>>())),
            Err(e) => Record::fail(id, e.to_string()),
        });
    }
    let id = "todd.connection_independence";
    out.push(match s.connection_independence(&t, &other_table(model, opts)) {
        Ok(Exactness::Exact { witness }) => Record::pass(id).with_value(format!("witness {}", witness.display(s.atiyah.small()))),
        Ok(Exactness::NotExact { .. }) => Record::fail(id, "difference of pair cocycles is not exact"),
        Err(e) => Record::fail(id, e.to_string()),
    });
    out
}

fn hpl_verify(model: &Model, opts: &Options) -> Vec<Record> {
    let pi = PullbackAlgebroid::new(model);
    let mut out: Vec<Record> = pi.check_maps(1).iter().map(|c| from_check("hpl.maps", c)).collect();
    let basic = pi.basic_contraction();
    out.push(from_report("hpl.basic", &basic.verify()));
    out.push(from_report("hpl.basic.hom", &hom_contraction(&basic, &basic).verify()));
    out.push(from_report("hpl.basic.tensor", &tensor_contraction(&[basic.clone(), basic.clone()]).verify()));
    for k in 0..=opts.max_k.unwrap_or(DEFAULT_EXTERIOR_K) {
        out.push(from_report(format!("hpl.basic.exterior.{}", k), &exterior_contraction(&basic, k).verify()));
    }
    out.push(from_check("hpl", &pi.check_filtration(1)));
    out.push(match pi.perturbed_pi_contraction() {
        Ok(p) => from_report("hpl.perturbed", &p.report).with_value("closed forms match"),
        Err(e) => Record::fail("hpl.perturbed", e.to_string()),
    });
    for seed in 0..TOY_SEEDS {
        let toy: Toy<Rational> = random_toy(seed, 3);
        let id = format!("hpl.toy.{}", seed);
        let rep = toy.contraction.verify();
        out.push(if !rep.all_ok() {
            Record::fail(id, rep.summary())
        } else {
            match perturb(&toy.contraction, &toy.pert, DEFAULT_MAX_ITER) {
                Ok(p) => from_report(id, &p.report),
                Err(e) => Record::fail(id, e.to_string()),
            }
        });
    }
    out
}

fn cohomology(model: &Model) -> Vec<Record> {
    if !model.is_point() {
        return vec![Record::skipped("cohomology", format!("operation requires a point chart (n = 0), got n = {}", model.n()))];
    }
    let r = model.r();
    let mut tags = vec![ModuleTag::B, ModuleTag::BDualEndB];
    tags.extend((0..=model.rprime()).map(ModuleTag::LambdaBDual));
    tags.into_iter()
        .map(|tag| {
            let id = format!("cohomology.{}", tag);
            match ce_cohomology_dims(model, tag, 0..=r) {
                Ok(d) => Record::pass(id).with_value(format!("dim H^0..H^{} = {:?}", r, d)),
                Err(e) => Record::fail(id, e.to_string()),
            }
        })
        .collect()
}
