use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use matlift::bits::{canonicalize, expand, from_one_based, OneBased, SubsetMask};
use matlift::format::{emit_matroid, parse_group, parse_lift, parse_matrix, parse_matroid};
use matlift::gain::{
    balanced_circuit_audit, full_gain_graph, graphic_matroid, group_partitions, primitive_partition, rank2_lift_k3,
    zaslavsky_lift, FinGroup, GainGraph,
};
use matlift::gf::{column_matroid, independent_reduction, lift_witness, verify_witness, GfMatrix, WitnessProblem};
use matlift::krt::{
    build_krt, ingleton_inequality, intersection_certificate, is_ingleton_sparse_paving, obstruction_report,
    scan_vamos_like_minors, KrtSpec, ModularPairFact, RankGapFact, MAX_SCAN_GROUND,
};
use matlift::lifts::{
    build_lift_forced, check_star, check_star_prime, elementary_lift, is_linear_class, lift_agrees_with_elementary,
    LiftSpec, LinearClass,
};
use matlift::matroid::{is_isomorphic, is_quotient, validate_hyperplanes, IsoOutcome};
use matlift::{Error, Matroid};

use crate::report::{family_json, set_json, Check, Report};
use crate::{Command, GainCommand, KrtCommand, KrtParams, LiftCommand, RepCommand};

pub enum Failure {
    /// Malformed input or arguments: exit 2, no report.
    Usage(String),
    /// A mathematical refusal: exit 1 with a report.
    Math(Box<Report>),
}

type Done = Result<(Report, String), Failure>;

fn report(inputs: Value, checks: Vec<Check>, conclusion: &str, details: Value) -> Report {
    Report { command: Vec::new(), inputs, checks, conclusion: conclusion.to_string(), details, wall_time_ms: 0 }
}

/// Sorts a library error into exit code 1 (math) or 2 (input).
fn classify(inputs: &Value, check: &str, e: Error) -> Failure {
    match e {
        Error::InvalidCircuits(_)
        | Error::InvalidHyperplanes(_)
        | Error::InvalidRank(_)
        | Error::RankMismatch { .. }
        | Error::GroupAxiom(_)
        | Error::NoNontrivialPartition
        | Error::NotLinearClass { .. }
        | Error::StarPrimeFails { .. }
        | Error::DependentColumns(_)
        | Error::NotAColumnCircuit(_)
        | Error::NotACycle
        | Error::Internal(_) => {
            let msg = e.to_string();
            Failure::Math(Box::new(report(inputs.clone(), vec![Check::new(check, false, json!(msg))], &msg, Value::Null)))
        }
        other => Failure::Usage(other.to_string()),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write_out(path: &Option<PathBuf>, body: &str) -> Result<(), Failure> {
    if let Some(p) = path {
        std::fs::write(p, body).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(())
}

fn in_file(path: &Path, what: Error) -> Failure {
    Failure::Usage(format!("{}: {what}", path.display()))
}

fn load_matroid(path: &Path, inputs: &Value) -> Result<Matroid, Failure> {
    let text = read(path)?;
    parse_matroid(&text).map_err(|e| match e {
        Error::InvalidCircuits(_) => classify(inputs, "circuit_axioms", e),
        other => in_file(path, other),
    })
}

fn load_group(spec: &str, inputs: &Value) -> Result<FinGroup, Failure> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return FinGroup::builtin(name).map_err(|e| Failure::Usage(e.to_string()));
    }
    let path = Path::new(spec);
    let text = read(path)?;
    parse_group(&text).map_err(|e| match e {
        Error::GroupAxiom(_) => classify(inputs, "group_axioms", e),
        other => in_file(path, other),
    })
}

/// Parses `1,2,5`, `1 2 5` or `{1,2,5}`; an empty string is the empty set.
fn parse_labels(text: &str) -> Result<Vec<usize>, Failure> {
    text.trim_matches(|c| c == '{' || c == '}')
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Failure::Usage(format!("'{t}' is not a positive integer"))))
        .collect()
}

fn parse_set(text: &str, n: usize) -> Result<SubsetMask, Failure> {
    from_one_based(&parse_labels(text)?, n).map_err(|e| Failure::Usage(e.to_string()))
}

fn krt_spec(p: KrtParams) -> Result<KrtSpec, Failure> {
    KrtSpec::new(p.r, p.t).map_err(|e| Failure::Usage(e.to_string()))
}

fn matroid_json(m: &Matroid) -> Value {
    json!({ "n": m.n(), "rank": m.full_rank(), "circuits": family_json(m.circuits()) })
}

fn axiom_check(m: &Matroid) -> Check {
    match m.audit_axioms() {
        Ok(()) => Check::plain("axioms", true),
        Err(e) => Check::new("axioms", false, json!(e.to_string())),
    }
}

pub fn dispatch(command: &Command) -> Done {
    match command {
        Command::Check { matroid } => check(matroid),
        Command::Rank { matroid, set } => rank(matroid, set),
        Command::Lift(LiftCommand::Elementary { matroid, class, out }) => lift_elementary(matroid, class, out),
        Command::Lift(LiftCommand::General { spec, check_star, check_star_prime: _, force, out }) => {
            lift_general(spec, *check_star, *force, out)
        }
        Command::Rep(RepCommand::Witness { matrix, x, reduce }) => rep_witness(matrix, x, *reduce),
        Command::Krt(KrtCommand::Build { params, out }) => krt_build(*params, out),
        Command::Krt(KrtCommand::Certify { params }) => krt_certify(*params),
        Command::Krt(KrtCommand::Ingleton { params }) => krt_ingleton(*params),
        Command::Krt(KrtCommand::VamosScan { params }) => krt_vamos_scan(*params),
        Command::Gain(GainCommand::Build { group, n, out }) => gain_build(group, *n, out),
        Command::Gain(GainCommand::Lift3 { group, out }) => gain_lift3(group, out),
        Command::Gain(GainCommand::Partitions { group }) => gain_partitions(group),
        Command::Iso { first, second, budget } => iso(first, second, *budget),
    }
}

fn check(path: &Path) -> Done {
    let inputs = json!({ "matroid": path.display().to_string() });
    let m = load_matroid(path, &inputs)?;
    let checks = vec![Check::plain("circuit_axioms", true), axiom_check(&m)];
    let text = format!("matroid on {} elements, rank {}, {} circuits\n", m.n(), m.full_rank(), m.circuits().len());
    let details = json!({
        "matroid": matroid_json(&m),
        "sparse_paving": m.is_sparse_paving(),
        "circuit_hyperplanes": family_json(&m.circuit_hyperplanes()),
    });
    let conclusion = if checks.iter().all(|c| c.pass) { "valid matroid" } else { "axiom violation" };
    Ok((report(inputs, checks, conclusion, details), text))
}

fn rank(path: &Path, set: &str) -> Done {
    let inputs = json!({ "matroid": path.display().to_string(), "set": set });
    let m = load_matroid(path, &inputs)?;
    let x = parse_set(set, m.n())?;
    let r = m.rank(x);
    let details = json!({
        "set": set_json(x),
        "rank": r,
        "closure": set_json(m.closure(x)),
        "independent": m.is_independent(x),
    });
    Ok((report(inputs, Vec::new(), &format!("r({}) = {r}", OneBased(x)), details), String::new()))
}

/// A class is either 1-based circuit indices or a file of circuits, one per line.
fn load_class(m: &Matroid, spec: &str) -> Result<LinearClass, Failure> {
    let path = Path::new(spec);
    let indices: Vec<usize> = if path.is_file() {
        let text = read(path)?;
        let mut out = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let c = parse_set(line, m.n())?;
            let idx = m
                .circuit_index(c)
                .ok_or_else(|| Failure::Usage(format!("{}: line {}: {} is not a circuit", spec, no + 1, OneBased(c))))?;
            out.push(idx);
        }
        out
    } else {
        let labels = parse_labels(spec)?;
        if labels.contains(&0) {
            return Err(Failure::Usage("circuit indices are 1-based".into()));
        }
        labels.into_iter().map(|i| i - 1).collect()
    };
    LinearClass::from_indices(m, &indices).map_err(|e| Failure::Usage(e.to_string()))
}

fn lift_elementary(path: &Path, class_spec: &str, out: &Option<PathBuf>) -> Done {
    let inputs = json!({ "matroid": path.display().to_string(), "class": class_spec });
    let m = load_matroid(path, &inputs)?;
    let class = load_class(&m, class_spec)?;
    let members: Vec<SubsetMask> = class.indices().iter().map(|&i| m.circuits()[i]).collect();
    if !is_linear_class(&m, &class) {
        let e = elementary_lift(&m, &class).expect_err("non-linear class is refused");
        return Err(classify(&inputs, "linear_class", e));
    }
    let lift = elementary_lift(&m, &class).map_err(|e| classify(&inputs, "linear_class", e))?;
    let agrees = lift_agrees_with_elementary(&m, &class).map_err(|e| classify(&inputs, "agrees_with_general_lift", e))?;
    let checks = vec![
        Check::plain("linear_class", true),
        axiom_check(&lift),
        Check::plain("quotient", is_quotient(&m, &lift)),
        Check::plain("agrees_with_general_lift", agrees),
    ];
    write_out(out, &emit_matroid(&lift))?;
    let details = json!({ "class": family_json(&members), "base": matroid_json(&m), "lift": matroid_json(&lift) });
    let text = format!("elementary lift: rank {} -> {}\n", m.full_rank(), lift.full_rank());
    Ok((report(inputs, checks, "elementary lift", details), text))
}

fn lift_general(path: &Path, perfect: bool, force: bool, out: &Option<PathBuf>) -> Done {
    let condition = if perfect { "star" } else { "star_prime" };
    let inputs = json!({ "spec": path.display().to_string(), "condition": condition, "force": force });
    let text = read(path)?;
    let spec: LiftSpec = parse_lift(&text).map_err(|e| match e {
        Error::InvalidCircuits(_) => classify(&inputs, "circuit_axioms", e),
        other => in_file(path, other),
    })?;
    let circuits = spec.base().circuits();
    let witness = if perfect {
        check_star(&spec).err().map(|w| {
            let coll: Vec<SubsetMask> = w.collection.iter().map(|&i| circuits[i]).collect();
            json!({ "collection": family_json(&coll), "circuit": set_json(circuits[w.circuit]) })
        })
    } else {
        check_star_prime(&spec).err().map(|w| {
            json!({
                "c1": set_json(circuits[w.c1]),
                "c2": set_json(circuits[w.c2]),
                "circuit": set_json(circuits[w.circuit]),
            })
        })
    };
    let mut checks = vec![Check::new(condition, witness.is_none(), witness.clone().unwrap_or(Value::Null))];
    if witness.is_some() && !force {
        let r = report(inputs, checks, "condition fails; lift not built", Value::Null);
        return Err(Failure::Math(Box::new(r)));
    }
    let forced = build_lift_forced(&spec).map_err(|e| classify(&inputs, "rank_axioms", e))?;
    let rank_check = match &forced.rank_violation {
        None => Check::plain("rank_axioms", true),
        Some(v) => Check::new("rank_axioms", false, json!({ "kind": format!("{:?}", v.kind), "x": set_json(v.x), "y": set_json(v.y) })),
    };
    checks.push(rank_check);
    let mut details = json!({ "base": matroid_json(spec.base()), "overlay": matroid_json(spec.overlay()) });
    let conclusion = match &forced.matroid {
        Some(lift) => {
            checks.push(Check::plain("quotient", is_quotient(spec.base(), lift)));
            write_out(out, &emit_matroid(lift))?;
            details["lift"] = matroid_json(lift);
            "lift built"
        }
        None => "formula is not a rank function",
    };
    let text = match &forced.matroid {
        Some(l) => format!("lift of rank {} (base rank {})\n", l.full_rank(), spec.base().full_rank()),
        None => String::new(),
    };
    Ok((report(inputs, checks, conclusion, details), text))
}

fn matrix_json(a: &GfMatrix) -> Value {
    let rows: Vec<Vec<u32>> = (0..a.rows()).map(|i| a.row(i).to_vec()).collect();
    json!(rows)
}

fn rep_witness(path: &Path, x: &str, reduce: bool) -> Done {
    let inputs = json!({ "matrix": path.display().to_string(), "x": x, "reduce": reduce });
    let text = read(path)?;
    let a = parse_matrix(&text).map_err(|e| in_file(path, e))?;
    let xs = parse_set(x, a.cols())?;
    let mut problem = WitnessProblem { a, x: xs };
    let mut dropped = 0;
    if reduce {
        let (p, d) = independent_reduction(&problem);
        problem = p;
        dropped = d;
    }
    let w = lift_witness(&problem).map_err(|e| classify(&inputs, "witness", e))?;
    let k = column_matroid(&problem.a).map_err(|e| classify(&inputs, "witness", e))?;
    let verified = verify_witness(&w.spec, &w.l).map_err(|e| classify(&inputs, "verify", e))?;
    let checks = vec![
        Check::plain("contraction_is_m", k.contract(problem.x).ok().as_ref() == Some(&w.m)),
        Check::plain("deletion_is_l", k.delete(problem.x).ok().as_ref() == Some(&w.l)),
        Check::plain("star_prime", check_star_prime(&w.spec).is_ok()),
        Check::plain("lift_equals_l", verified),
    ];
    let details = json!({
        "field": problem.a.field().order(),
        "x": set_json(problem.x),
        "dropped": set_json(dropped),
        "m": matroid_json(&w.m),
        "l": matroid_json(&w.l),
        "n": matroid_json(&w.n),
        "b": matrix_json(&w.b),
    });
    let text = format!(
        "overlay on {} circuits of M, rank {}\n",
        w.m.circuits().len(),
        w.n.full_rank()
    );
    Ok((report(inputs, checks, "M^N equals L", details), text))
}

fn params_json(spec: KrtSpec) -> Value {
    json!({
        "r": spec.r(),
        "t": spec.t(),
        "n": spec.n(),
        "ingleton_regime": spec.in_ingleton_regime(),
        "antichain_regime": spec.in_antichain_regime(),
    })
}

fn krt_build(p: KrtParams, out: &Option<PathBuf>) -> Done {
    let spec = krt_spec(p)?;
    let inputs = json!({ "r": p.r, "t": p.t });
    let k = build_krt(spec).map_err(|e| classify(&inputs, "sparse_paving", e))?;
    let chs = spec.circuit_hyperplanes();
    let mut sorted = chs.clone();
    canonicalize(&mut sorted);
    let checks = vec![
        Check::plain("intersections_below_r_minus_1", intersection_certificate(spec)),
        Check::plain("sparse_paving", k.is_sparse_paving()),
        Check::plain("circuit_hyperplanes_match", k.circuit_hyperplanes() == sorted),
    ];
    write_out(out, &emit_matroid(&k))?;
    let mut text = String::new();
    for &h in &chs {
        writeln!(text, "{}", OneBased(h)).unwrap();
    }
    let details = json!({
        "params": params_json(spec),
        "x": set_json(spec.x()),
        "c_prime": family_json(&spec.c_prime()),
        "c_double_prime": family_json(&spec.c_double_prime()),
        "circuit_hyperplanes": family_json(&chs),
        "rank": k.full_rank(),
    });
    Ok((report(inputs, checks, &format!("{spec} built"), details), text))
}

fn pair_fact_json(f: &ModularPairFact) -> Value {
    json!({ "i": f.i, "j": f.j, "union_size": f.union_size, "rank_m": f.rank_m, "holds": f.holds })
}

fn gap_fact_json(f: &RankGapFact) -> Value {
    json!({
        "i": f.i,
        "j": f.j,
        "rank_l": f.rank_l,
        "rank_m": f.rank_m,
        "expected_gap": f.expected_gap,
        "holds": f.holds,
    })
}

fn krt_certify(p: KrtParams) -> Done {
    let spec = krt_spec(p)?;
    let inputs = json!({ "r": p.r, "t": p.t });
    let k = build_krt(spec).map_err(|e| classify(&inputs, "sparse_paving", e))?;
    let rep = obstruction_report(spec).map_err(|e| classify(&inputs, "facts", e))?;
    let checks = vec![
        Check::plain("sparse_paving", k.is_sparse_paving()),
        Check::plain("c_circuits_of_m", rep.c_are_circuits_of_m),
        Check::plain("c_independent_in_l", rep.c_independent_in_l),
        Check::plain("fact_a", rep.fact_a()),
        Check::plain("fact_b", rep.fact_b()),
        Check::plain("fact_c", rep.fact_c()),
        Check::plain("fact_d", rep.fact_d()),
        Check::plain("contradiction", rep.certifies()),
    ];
    let ingleton = match is_ingleton_sparse_paving(&k) {
        Ok((sat, w)) => json!({ "satisfied": sat, "witness": w.map(|w| ingleton_witness_json(&k, &w)) }),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let vamos = if spec.n() <= MAX_SCAN_GROUND {
        let minors = scan_vamos_like_minors(&k).map_err(|e| classify(&inputs, "vamos_scan", e))?;
        vamos_json(&k, &minors)
    } else {
        Value::Null
    };
    let details = json!({
        "params": params_json(spec),
        "sparse_paving": k.is_sparse_paving(),
        "circuit_hyperplanes": family_json(&spec.circuit_hyperplanes()),
        "c": family_json(&(1..=spec.t()).map(|i| spec.c(i)).collect::<Vec<_>>()),
        "x": set_json(spec.x()),
        "facts": {
            "a": rep.a.iter().map(pair_fact_json).collect::<Vec<_>>(),
            "b": pair_fact_json(&rep.b),
            "c": rep.c.iter().map(gap_fact_json).collect::<Vec<_>>(),
            "d": gap_fact_json(&rep.d),
        },
        "derivation": rep.derivation,
        "ingleton": ingleton,
        "vamos_like_minors": vamos,
    });
    let conclusion = if rep.certifies() { "non-representable over every field" } else { "no certificate" };
    let mut text = String::new();
    for line in &rep.derivation {
        writeln!(text, "{line}").unwrap();
    }
    writeln!(text, "{spec}: {conclusion}").unwrap();
    Ok((report(inputs, checks, conclusion, details), text))
}

fn ingleton_witness_json(m: &Matroid, w: &matlift::krt::IngletonWitness) -> Value {
    let [a, b, c, d] = w.quadruple();
    let eval = ingleton_inequality(m, a, b, c, d);
    json!({
        "i": set_json(w.i),
        "pairs": w.pairs.iter().map(|&p| set_json(p)).collect::<Vec<_>>(),
        "quadruple": [set_json(a), set_json(b), set_json(c), set_json(d)],
        "lhs": eval.lhs,
        "rhs": eval.rhs,
        "satisfied": eval.satisfied,
    })
}

fn krt_ingleton(p: KrtParams) -> Done {
    let spec = krt_spec(p)?;
    let inputs = json!({ "r": p.r, "t": p.t });
    let k = build_krt(spec).map_err(|e| classify(&inputs, "sparse_paving", e))?;
    let (sat, w) = is_ingleton_sparse_paving(&k).map_err(|e| classify(&inputs, "ingleton", e))?;
    let witness = w.map(|w| ingleton_witness_json(&k, &w)).unwrap_or(Value::Null);
    let text = match &w {
        Some(w) => format!("violating pairs: {w}\n"),
        None => String::new(),
    };
    let conclusion = if sat { "satisfies Ingleton" } else { "violates Ingleton" };
    let details = json!({ "params": params_json(spec), "witness": witness });
    let checks = vec![Check::new("ingleton", sat, witness)];
    Ok((report(inputs, checks, &format!("{spec} {conclusion}"), details), text))
}

/// Pairs are reported in the labels of the original matroid.
fn vamos_json(m: &Matroid, minors: &[matlift::krt::VamosMinor]) -> Value {
    Value::Array(
        minors
            .iter()
            .map(|v| {
                let keep = m.full() & !(v.contracted | v.deleted);
                json!({
                    "contracted": set_json(v.contracted),
                    "deleted": set_json(v.deleted),
                    "pairs": v.partition.pairs.iter().map(|&p| set_json(expand(p, keep))).collect::<Vec<_>>(),
                    "missing": [v.partition.missing.0 + 1, v.partition.missing.1 + 1],
                })
            })
            .collect(),
    )
}

fn krt_vamos_scan(p: KrtParams) -> Done {
    let spec = krt_spec(p)?;
    let inputs = json!({ "r": p.r, "t": p.t });
    let k = build_krt(spec).map_err(|e| classify(&inputs, "sparse_paving", e))?;
    let minors = scan_vamos_like_minors(&k).map_err(|e| Failure::Usage(e.to_string()))?;
    let found = vamos_json(&k, &minors);
    let checks = vec![Check::new("no_vamos_like_minor", minors.is_empty(), if minors.is_empty() { Value::Null } else { found.clone() })];
    let conclusion = format!("{} Vamos-like minor(s)", minors.len());
    let details = json!({ "params": params_json(spec), "vamos_like_minors": found });
    Ok((report(inputs, checks, &conclusion, details), format!("{spec}: {conclusion}\n")))
}

fn edges_json(gg: &GainGraph, set: SubsetMask) -> Value {
    Value::Array(gg.edges(set).into_iter().map(|e| json!(gg.format_edge(e))).collect())
}

fn group_json(g: &FinGroup) -> Value {
    json!({ "order": g.order(), "elements": g.names(), "identity": g.name(g.identity()) })
}

fn part_json(g: &FinGroup, part: SubsetMask) -> Value {
    json!(matlift::bits::elements(part).map(|a| g.name(a).to_string()).collect::<Vec<_>>())
}

fn gain_build(group: &str, n: usize, out: &Option<PathBuf>) -> Done {
    let inputs = json!({ "group": group, "n": n });
    let g = load_group(group, &inputs)?;
    let gg = full_gain_graph(&g, n).map_err(|e| Failure::Usage(e.to_string()))?;
    let graphic = graphic_matroid(&gg).map_err(|e| Failure::Usage(e.to_string()))?;
    let lift = zaslavsky_lift(&gg).map_err(|e| classify(&inputs, "zaslavsky_lift", e))?;
    let audit = balanced_circuit_audit(&lift, &gg).map_err(|e| classify(&inputs, "balanced_circuit_audit", e))?;
    let bad: Vec<Value> = audit.mismatches().map(|r| edges_json(&gg, r.cycle)).collect();
    let checks = vec![
        axiom_check(&lift),
        Check::new("balanced_circuit_audit", audit.pass, if bad.is_empty() { Value::Null } else { json!(bad) }),
        Check::plain("quotient", is_quotient(&graphic, &lift)),
        Check::plain("rank_plus_one", lift.full_rank() == graphic.full_rank() + 1),
    ];
    write_out(out, &emit_matroid(&lift))?;
    let details = json!({
        "group": group_json(&g),
        "edges": edges_json(&gg, gg.all_edges()),
        "graphic_rank": graphic.full_rank(),
        "lift_rank": lift.full_rank(),
        "cycles": audit.rows.len(),
        "balanced_cycles": audit.rows.iter().filter(|r| r.balanced).count(),
    });
    let text = format!("{} edges, graphic rank {}, lift rank {}\n", gg.edge_count(), graphic.full_rank(), lift.full_rank());
    Ok((report(inputs, checks, "balanced-cycle lift built", details), text))
}

fn gain_lift3(group: &str, out: &Option<PathBuf>) -> Done {
    let inputs = json!({ "group": group });
    let g = load_group(group, &inputs)?;
    let lift = rank2_lift_k3(&g).map_err(|e| match e {
        Error::NoNontrivialPartition => classify(&inputs, "nontrivial_partition", e),
        other => classify(&inputs, "rank2_lift", other),
    })?;
    let ground = lift.matroid.ground();
    let hyperplane_check = match validate_hyperplanes(&lift.hyperplanes, ground) {
        Ok(()) => Check::plain("hyperplane_axioms", true),
        Err(v) => Check::new("hyperplane_axioms", false, json!(v.to_string())),
    };
    let bad: Vec<Value> = lift.audit.mismatches().map(|r| edges_json(&lift.graph, r.cycle)).collect();
    let checks = vec![
        hyperplane_check,
        Check::plain("rank_4", lift.matroid.full_rank() == 4),
        Check::new("balanced_circuit_audit", lift.audit.pass, if bad.is_empty() { Value::Null } else { json!(bad) }),
        Check::plain("quotient", is_quotient(&lift.graphic, &lift.matroid)),
    ];
    write_out(out, &emit_matroid(&lift.matroid))?;
    let gg = &lift.graph;
    let hyperplanes: Vec<Value> = lift.hyperplanes.hyperplanes.iter().map(|&h| edges_json(gg, h)).collect();
    let details = json!({
        "group": group_json(&g),
        "partition": lift.partition.parts().iter().map(|&p| part_json(&g, p)).collect::<Vec<_>>(),
        "edges": edges_json(gg, gg.all_edges()),
        "seeds": lift.seeds.iter().map(|&s| edges_json(gg, s)).collect::<Vec<_>>(),
        "hyperplane_count": lift.hyperplanes.hyperplanes.len(),
        "hyperplanes": hyperplanes,
        "rank": lift.matroid.full_rank(),
        "graphic_rank": lift.graphic.full_rank(),
    });
    let text = format!(
        "{} elements, {} hyperplanes, rank {}\n",
        lift.matroid.n(),
        lift.hyperplanes.hyperplanes.len(),
        lift.matroid.full_rank()
    );
    Ok((report(inputs, checks, "rank-2 lift of the graphic matroid", details), text))
}

fn gain_partitions(group: &str) -> Done {
    let inputs = json!({ "group": group });
    let g = load_group(group, &inputs)?;
    let all = group_partitions(&g);
    let primitive = primitive_partition(&g).map_err(|e| classify(&inputs, "primitive_partition", e))?;
    let listed: Vec<Value> =
        all.iter().map(|p| json!(p.parts().iter().map(|&a| part_json(&g, a)).collect::<Vec<_>>())).collect();
    let mut text = String::new();
    for p in &all {
        let parts: Vec<String> = p.parts().iter().map(|&a| g.format_set(a)).collect();
        writeln!(text, "{}", parts.join(" ")).unwrap();
    }
    let (checks, prim_json, conclusion) = match &primitive {
        None => (
            vec![Check::new("nontrivial_partition", false, json!("no nontrivial partition"))],
            Value::Null,
            "no nontrivial partition".to_string(),
        ),
        Some(p) => {
            let non_refined: Vec<Value> =
                all.iter().filter(|q| !p.refines(q)).map(|q| json!(q.parts().iter().map(|&a| part_json(&g, a)).collect::<Vec<_>>())).collect();
            (
                vec![
                    Check::plain("nontrivial_partition", true),
                    Check::plain("conjugation_closed", p.is_conjugation_closed(&g)),
                    Check::new("refines_every_partition", non_refined.is_empty(), if non_refined.is_empty() { Value::Null } else { json!(non_refined) }),
                ],
                json!(p.parts().iter().map(|&a| part_json(&g, a)).collect::<Vec<_>>()),
                format!("primitive partition has {} parts", p.len()),
            )
        }
    };
    let details = json!({ "group": group_json(&g), "partitions": listed, "primitive": prim_json });
    Ok((report(inputs, checks, &conclusion, details), text))
}

fn iso(first: &Path, second: &Path, budget: u64) -> Done {
    let inputs = json!({ "first": first.display().to_string(), "second": second.display().to_string(), "budget": budget });
    let m1 = load_matroid(first, &inputs)?;
    let m2 = load_matroid(second, &inputs)?;
    let outcome = is_isomorphic(&m1, &m2, budget);
    let (check, conclusion, details) = match &outcome {
        IsoOutcome::Isomorphic(perm) => {
            let map: Vec<Value> = perm.iter().enumerate().map(|(e, &f)| json!([e + 1, f + 1])).collect();
            (Check::plain("isomorphic", true), "isomorphic", json!({ "permutation": map }))
        }
        IsoOutcome::NonIsomorphic => {
            (Check::new("isomorphic", false, json!("non-isomorphic")), "non-isomorphic", Value::Null)
        }
        IsoOutcome::BudgetExceeded => {
            (Check::new("isomorphic", false, json!("budget exceeded")), "budget exceeded", Value::Null)
        }
    };
    let mut text = String::new();
    if let Some(p) = outcome.permutation() {
        let pairs: Vec<String> = p.iter().enumerate().map(|(e, &f)| format!("{}->{}", e + 1, f + 1)).collect();
        writeln!(text, "{}", pairs.join(" ")).unwrap();
    }
    Ok((report(inputs, vec![check], conclusion, details), text))
}
