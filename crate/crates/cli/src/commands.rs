use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use serde_json::{json, Value};

use congruence_core::congruence::detect::{detect, OrbitGrouping};
use congruence_core::congruence::{
    congruence_quotients, disc_equivalence, hecke_congruence_module, obstruction_primes, strong_congruence_check,
};
use congruence_core::criticality::is_critical_at_1;
use congruence_core::hecke::{isotypic_decomposition, projector_pair};
use congruence_core::io::json::{disc_outcome_json, int_matrix_json, ints_json, module_json, rat_matrix_json};
use congruence_core::io::{
    instance_to_file, parse_eigenvalue_table, parse_instance_value, random_instance, IngestMode, Instance, ResultRecord,
};
use congruence_core::lattice::{dual_lattice, dual_lattice_left, is_perfect, BilinearPairing, Lattice, SplitDecomposition};
use congruence_core::linalg::{snf, IntMatrix};
use congruence_core::modsym::{build_space, cuspidal_lattice, default_hecke_primes, hecke_operator, to_hecke_system};
use congruence_core::satake::congruent_eigensystems;
use congruence_core::Error;

use crate::weights::place_weights;
use crate::{Cli, Command};

#[derive(Debug)]
pub enum Failure {
    Domain(Error),
    Io(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Domain(e) => e.fmt(f),
            Failure::Io(s) => f.write_str(s),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome<T> = Result<T, Failure>;

fn read_bytes(path: &Path) -> Outcome<Vec<u8>> {
    std::fs::read(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn parse_json(bytes: &[u8], what: &Path) -> Outcome<Value> {
    serde_json::from_slice(bytes).map_err(|e| {
        Failure::Domain(Error::Schema { path: what.display().to_string(), message: format!("not valid JSON: {e}") })
    })
}

fn load_instance(path: &Path) -> Outcome<(Value, Instance)> {
    let doc = parse_json(&read_bytes(path)?, path)?;
    let inst = parse_instance_value(&doc)?;
    Ok((doc, inst))
}

pub fn run(cli: &Cli) -> Outcome<()> {
    let record = match &cli.command {
        Command::Snf(a) => {
            let input: Value = match (&a.matrix, &a.input) {
                (Some(text), _) => parse_json(text.as_bytes(), Path::new("--matrix"))?,
                (None, Some(p)) => parse_json(&read_bytes(p)?, p)?,
                (None, None) => return Err(Failure::Io("one of --matrix and --in is required".into())),
            };
            let m = congruence_core::io::parse_int_matrix(&input.to_string())?;
            let s = snf(&m);
            let output = json!({
                "invariant_factors": ints_json(&s.invariant_factors()),
                "rank": s.rank,
                "u": int_matrix_json(&s.u),
                "d": int_matrix_json(&s.d),
                "v": int_matrix_json(&s.v),
            });
            ResultRecord::new("snf", &input, json!({}), output)
        }
        Command::LatticeDual(a) => {
            let (input, inst) = load_instance(&a.instance)?;
            let lattice = inst.system.lattice();
            let n = lattice.ambient_dim();
            let pairing = inst.pairing.as_ref().map(|p| p.pairing.clone()).unwrap_or_else(|| BilinearPairing::standard(n));
            let dual = match a.side.as_str() {
                "left" => dual_lattice(lattice, &pairing, None)?,
                _ => dual_lattice_left(lattice, &pairing, None)?,
            };
            let mut output = json!({ "side": a.side, "dual_basis": rat_matrix_json(dual.basis()) });
            if let Some(p) = &inst.pairing {
                output["matches_instance_dual"] = json!(p.dual == dual);
                output["perfect"] = json!(is_perfect(lattice, &p.dual, &p.pairing));
            }
            ResultRecord::new("lattice-dual", &input, json!({ "side": a.side }), output)
        }
        Command::CongruenceModule(a) => {
            let (input, inst) = load_instance(&a.instance)?;
            let h = &inst.system;
            let components = isotypic_decomposition(h);
            let (e1, e2) = projector_pair(&components, &a.split)?;
            let r = h.rank();
            let std_lattice = Lattice::standard(r);
            let split = SplitDecomposition::from_projector(e1.clone(), &BilinearPairing::standard(r))?;
            let q = congruence_quotients(&std_lattice, &split)?;
            let hecke = hecke_congruence_module(h, &e1, &e2)?;
            let strong = strong_congruence_check(&std_lattice, &split, h, &e1, &e2)?;
            let output = json!({
                "components": components.len(),
                "congruence_module": module_json(&q.module),
                "first_quotient": module_json(&q.first),
                "second_quotient": module_json(&q.second),
                "hecke_congruence_module": module_json(&hecke),
                "support_contained": strong,
            });
            ResultRecord::new("congruence-module", &input, json!({ "split": a.split }), output)
        }
        Command::DiscEquiv(a) => {
            let (input, inst) = load_instance(&a.split.instance)?;
            let pd = inst.pairing.as_ref().ok_or_else(|| Error::InvalidInput("the instance has no pairing".into()))?;
            let components = isotypic_decomposition(&inst.system);
            let (e1, _) = projector_pair(&components, &a.split.split)?;
            let ambient = inst.ambient_operator(&e1)?;
            let split = SplitDecomposition::from_projector(ambient, &pd.pairing)?;
            let outcome = disc_equivalence(&pd.lattice, &pd.dual, &pd.pairing, &split, a.prime)?;
            let obstruction = obstruction_primes(&pd.lattice, &pd.dual, &pd.pairing)?;
            let output = json!({
                "result": disc_outcome_json(&outcome),
                "obstruction_primes": ints_json(&obstruction),
            });
            ResultRecord::new("disc-equiv", &input, json!({ "split": a.split.split, "prime": a.prime }), output)
        }
        Command::Detect(a) => {
            let (input, inst) = load_instance(&a.instance)?;
            let grouping: OrbitGrouping = a.orbit_grouping.parse()?;
            let report = detect(&inst.system, a.prime, grouping, a.ext_degree, inst.pairing.as_ref())?;
            let params = json!({ "prime": a.prime, "orbit_grouping": a.orbit_grouping, "ext_degree": a.ext_degree });
            ResultRecord::new("detect", &input, params, report.to_json())
        }
        Command::Modsym(a) => {
            let space = build_space(a.level)?;
            let mut lattice = cuspidal_lattice(&space);
            let primes = if a.hecke.is_empty() { default_hecke_primes(a.level) } else { a.hecke.clone() };
            let mut ops: Vec<(u64, IntMatrix)> = Vec::new();
            for &l in &primes {
                let t = hecke_operator(&space, &lattice, l)?;
                lattice.operators.insert(l, t.clone());
                ops.push((l, t));
            }
            let system = to_hecke_system(&lattice, &ops)?;
            let mut meta = std::collections::BTreeMap::new();
            meta.insert("source".to_string(), json!("modular symbols"));
            meta.insert("level".to_string(), json!(a.level));
            let instance = serde_json::to_value(instance_to_file(&system, None, meta)).map_err(|e| Failure::Io(e.to_string()))?;
            let output = json!({
                "level": a.level,
                "manin_symbols": space.symbols().len(),
                "free_rank": space.free_rank(),
                "torsion": ints_json(space.torsion()),
                "cuspidal_rank": lattice.rank(),
                "hecke_primes": primes,
                "instance": instance,
            });
            let input = json!({ "level": a.level, "hecke": primes });
            ResultRecord::new("modsym", &input, input.clone(), output)
        }
        Command::Satake(a) => {
            let mode = if a.trusted { IngestMode::Trusted } else { IngestMode::Strict };
            let (ba, bb) = (read_bytes(&a.table_a)?, read_bytes(&a.table_b)?);
            let (ta, tb) = (parse_eigenvalue_table(&ba, mode)?, parse_eigenvalue_table(&bb, mode)?);
            let input = json!({ "table_a": parse_json(&ba, &a.table_a)?, "table_b": parse_json(&bb, &a.table_b)? });
            let excluded: BTreeSet<u64> =
                a.exclude.iter().chain(&ta.ramified_set).chain(&tb.ramified_set).copied().collect();
            let report = congruent_eigensystems(&ta.entries, &tb.entries, a.prime, a.ext_degree, &excluded)?;
            let mut output = report.to_json();
            output["labels"] = json!([ta.label, tb.label]);
            output["warnings"] = json!(ta.warnings.iter().chain(&tb.warnings).collect::<Vec<_>>());
            let params = json!({ "prime": a.prime, "ext_degree": a.ext_degree, "exclude": a.exclude, "trusted": a.trusted });
            ResultRecord::new("satake", &input, params, output)
        }
        Command::Criticality(a) => {
            let places = place_weights(a.n, a.signature, a.weights.as_deref())?;
            let report = is_critical_at_1(a.signature, &places, a.n)?;
            let input = json!({
                "n": a.n,
                "signature": [a.signature.0, a.signature.1],
                "weights": a.weights,
            });
            ResultRecord::new("criticality", &input, input.clone(), report.to_json())
        }
        Command::Gen(a) => {
            let file = random_instance(a.seed, a.dim, a.ops, a.plant)?;
            let instance = serde_json::to_value(&file).map_err(|e| Failure::Io(e.to_string()))?;
            let input = json!({ "seed": a.seed, "dim": a.dim, "ops": a.ops, "plant": a.plant });
            let output = json!({ "instance": instance });
            ResultRecord::new("gen", &input, input.clone(), output)
        }
    };
    let text = record.to_json_string();
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
