//! Scenario drivers producing machine-readable reports.
//!
//! Every number in a report is recomputed by the library at run time; each
//! verdict names the method used to establish it.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::building::{face_types, relative_position, FlagModel, RelativePosition};
use crate::coxeter::{enumerate_homomorphisms, enumerate_subgroups, CoxeterFamily, CoxeterGroup, Subgroup};
use crate::galois::{product_pair_action, product_projections, ClosedLattice, PairAction};
use crate::morphism::{
    find_equivariance_violation, find_opposition_violation, induced_face_maps, ChamberMap, Violation,
};
use crate::partition::Partition;
use crate::subspace::Matrix;
use crate::{Error, Result};

/// Random partitions drawn per scenario for the adjunction check.
pub const RANDOM_PARTITIONS: usize = 100;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub scenario: String,
    pub params: BTreeMap<String, Value>,
    pub counts: BTreeMap<String, u64>,
    pub lattice: Option<LatticeReport>,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
    pub timing_ms: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Findings are reported but do not affect the exit status.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub informational: bool,
}

impl Verdict {
    fn check(name: &str, pass: bool, method: &str) -> Self {
        Self {
            name: name.into(),
            pass,
            method: method.into(),
            detail: None,
            informational: false,
        }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    fn finding(mut self) -> Self {
        self.informational = true;
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeNode {
    pub id: String,
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HasseReport {
    pub subgroups: Vec<[String; 2]>,
    pub quotients: Vec<[String; 2]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeReport {
    pub nodes: Vec<LatticeNode>,
    pub hasse: HasseReport,
    pub pairing: Vec<[String; 2]>,
}

impl LatticeReport {
    fn new(
        lattice: &ClosedLattice,
        group: &CoxeterGroup,
        subgroup_label: impl Fn(usize) -> Option<String>,
        quotient_label: impl Fn(usize) -> Option<String>,
    ) -> Self {
        let sid = |i: usize| format!("S{i}");
        let qid = |i: usize| format!("Q{i}");
        let mut nodes: Vec<LatticeNode> = lattice
            .subgroups()
            .iter()
            .enumerate()
            .map(|(i, v)| LatticeNode {
                id: sid(i),
                kind: "subgroup",
                members: Some(v.labels(group)),
                blocks: None,
                label: subgroup_label(i),
            })
            .collect();
        nodes.extend(lattice.quotients().iter().enumerate().map(|(j, p)| LatticeNode {
            id: qid(j),
            kind: "quotient",
            members: None,
            blocks: Some(p.blocks()),
            label: quotient_label(j),
        }));
        Self {
            nodes,
            hasse: HasseReport {
                subgroups: lattice.subgroup_hasse().iter().map(|&(a, b)| [sid(a), sid(b)]).collect(),
                quotients: lattice.quotient_hasse().iter().map(|&(a, b)| [qid(a), qid(b)]).collect(),
            },
            pairing: lattice
                .pairing()
                .iter()
                .enumerate()
                .map(|(i, &j)| [sid(i), qid(j)])
                .collect(),
        }
    }
}

impl Report {
    fn new(scenario: &str) -> Self {
        Self {
            scenario: scenario.into(),
            params: BTreeMap::new(),
            counts: BTreeMap::new(),
            lattice: None,
            verdicts: Vec::new(),
            details: None,
            timing_ms: None,
        }
    }

    fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.params.insert(key.into(), value.into());
    }

    fn count(&mut self, key: &str, value: usize) {
        self.counts.insert(key.into(), value as u64);
    }

    /// Whether every non-informational verdict passed.
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass || v.informational)
    }

    /// 0 when every check passes, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            2
        }
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "scenario: {} ({})", self.scenario, params.join(", "));
        for (k, v) in &self.counts {
            let _ = writeln!(out, "  {k}: {v}");
        }
        if let Some(lattice) = &self.lattice {
            let _ = writeln!(out, "closed lattice:");
            for node in &lattice.nodes {
                let body = match (&node.members, &node.blocks) {
                    (Some(m), _) => format!("{{{}}}", m.join(", ")),
                    (_, Some(b)) => format!("{} blocks", b.len()),
                    _ => String::new(),
                };
                let label = node.label.as_deref().map(|l| format!(" [{l}]")).unwrap_or_default();
                let _ = writeln!(out, "  {} {}: {body}{label}", node.id, node.kind);
            }
            let pairs: Vec<String> = lattice.pairing.iter().map(|[a, b]| format!("{a}<->{b}")).collect();
            let _ = writeln!(out, "  pairing: {}", pairs.join(" "));
        }
        for v in &self.verdicts {
            let status = match (v.pass, v.informational) {
                (true, false) => "PASS",
                (false, false) => "FAIL",
                (true, true) => "yes",
                (false, true) => "no",
            };
            let _ = write!(out, "{status:>4}  {}  ({})", v.name, v.method);
            if let Some(d) = &v.detail {
                let _ = write!(out, ": {d}");
            }
            out.push('\n');
        }
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(out, "timing: {ms} ms");
        }
        out
    }

    /// Both Hasse diagrams side by side, pairing edges dashed.
    pub fn to_dot(&self) -> Result<String> {
        let lattice = self.lattice.as_ref().ok_or_else(|| {
            Error::Unsupported(format!("scenario {} has no lattice to draw", self.scenario))
        })?;
        let esc = |s: &str| s.replace('\\', "\\\\").replace('"', "\\\"");
        let mut out = String::new();
        let _ = writeln!(out, "digraph closed_lattice {{");
        let _ = writeln!(out, "  rankdir=BT;");
        for (kind, cluster, title) in [
            ("subgroup", "cluster_subgroups", "closed subgroups"),
            ("quotient", "cluster_quotients", "closed quotients"),
        ] {
            let _ = writeln!(out, "  subgraph {cluster} {{");
            let _ = writeln!(out, "    label=\"{title}\";");
            for node in lattice.nodes.iter().filter(|n| n.kind == kind) {
                let text = match (&node.label, &node.members, &node.blocks) {
                    (Some(l), _, _) => l.clone(),
                    (None, Some(m), _) => format!("{{{}}}", m.join(", ")),
                    (None, _, Some(b)) => format!("{} blocks", b.len()),
                    _ => node.id.clone(),
                };
                let _ = writeln!(out, "    {} [label=\"{}: {}\"];", node.id, node.id, esc(&text));
            }
            let edges = if kind == "subgroup" { &lattice.hasse.subgroups } else { &lattice.hasse.quotients };
            for [a, b] in edges {
                let _ = writeln!(out, "    {a} -> {b};");
            }
            let _ = writeln!(out, "  }}");
        }
        for [a, b] in &lattice.pairing {
            let _ = writeln!(out, "  {a} -> {b} [style=dashed, dir=none, constraint=false];");
        }
        let _ = writeln!(out, "}}");
        Ok(out)
    }
}

/// Statistics of the Galois-correspondence laws over a family of test
/// subgroups and quotients.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LawCheck {
    pub adjunction_pairs: usize,
    pub adjunction_violations: usize,
    pub closure_violations: usize,
    pub antitone_violations: usize,
}

/// Runs the adjunction, closure and antitone laws over every subgroup
/// against `quotients` plus `random` seeded random partitions.
pub fn check_galois_laws(
    action: &PairAction,
    subgroups: &[Subgroup],
    quotients: &[Partition],
    random: usize,
    seed: u64,
) -> Result<LawCheck> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut all_quotients: Vec<Partition> = quotients.to_vec();
    all_quotients.extend((0..random).map(|_| Partition::random(action.ground_size(), &mut rng)));

    let mut check = LawCheck::default();
    let finest: Vec<Partition> = subgroups
        .iter()
        .map(|v| action.finest_invariant_quotient(v))
        .collect::<Result<_>>()?;
    let closed_sub: Vec<Subgroup> = finest
        .iter()
        .map(|p| action.stabilizer_subgroup(p))
        .collect::<Result<_>>()?;
    let stabs: Vec<Subgroup> = all_quotients
        .iter()
        .map(|p| action.stabilizer_subgroup(p))
        .collect::<Result<_>>()?;

    for (p, stab) in all_quotients.iter().zip(&stabs) {
        for (v, pv) in subgroups.iter().zip(&finest) {
            check.adjunction_pairs += 1;
            if v.is_subset_of(stab) != p.leq(pv)? {
                check.adjunction_violations += 1;
            }
        }
    }

    // subgroups: extensive, idempotent, monotone; p^V antitone
    for (i, v) in subgroups.iter().enumerate() {
        let c = &closed_sub[i];
        if !v.is_subset_of(c) || action.close_subgroup(c)? != *c {
            check.closure_violations += 1;
        }
        for (j, u) in subgroups.iter().enumerate() {
            if v.is_subset_of(u) {
                if !c.is_subset_of(&closed_sub[j]) {
                    check.closure_violations += 1;
                }
                if !finest[j].leq(&finest[i])? {
                    check.antitone_violations += 1;
                }
            }
        }
    }

    // quotients: extensive, idempotent, monotone; W_p antitone
    let closed_quo: Vec<Partition> = stabs
        .iter()
        .map(|s| action.finest_invariant_quotient(s))
        .collect::<Result<_>>()?;
    for (i, p) in all_quotients.iter().enumerate() {
        let c = &closed_quo[i];
        if !p.leq(c)? || action.close_quotient(c)? != *c {
            check.closure_violations += 1;
        }
        for (j, r) in all_quotients.iter().enumerate() {
            if p.leq(r)? {
                if !c.leq(&closed_quo[j])? {
                    check.closure_violations += 1;
                }
                if !stabs[j].is_subset_of(&stabs[i]) {
                    check.antitone_violations += 1;
                }
            }
        }
    }
    Ok(check)
}

fn law_verdicts(report: &mut Report, laws: LawCheck, structured: usize, random: usize) {
    report.count("adjunction_pairs_checked", laws.adjunction_pairs);
    report.verdicts.push(
        Verdict::check(
            "adjunction V <= W_p iff p <= p^V",
            laws.adjunction_violations == 0,
            &format!("all subgroups x ({structured} structured + {random} seeded random partitions)"),
        )
        .with_detail(format!("{} violations", laws.adjunction_violations)),
    );
    report.verdicts.push(
        Verdict::check(
            "closures extensive, monotone, idempotent; maps antitone",
            laws.closure_violations == 0 && laws.antitone_violations == 0,
            "pairwise evaluation over the same subgroups and partitions",
        )
        .with_detail(format!(
            "{} closure / {} antitone violations",
            laws.closure_violations, laws.antitone_violations
        )),
    );
}

fn lattice_verdicts(report: &mut Report, lattice: &ClosedLattice, action: &PairAction) -> Result<()> {
    let exchange = lattice.meet_join_exchange_violations(action)?;
    report.verdicts.push(
        Verdict::check(
            "pairing exchanges meets and joins",
            exchange == 0,
            "all pairs of closed subgroups",
        )
        .with_detail(format!("{exchange} violations")),
    );
    report.verdicts.push(Verdict::check(
        "closed objects form sub-lattices",
        lattice.subgroups_form_sublattice(action.group()) && lattice.quotients_form_sublattice(),
        "closure of the closed lists under plain meet and join",
    ));
    Ok(())
}

fn subgroup_generators_label(v: &Subgroup, group: &CoxeterGroup) -> String {
    if v.is_trivial() {
        return "trivial".into();
    }
    if v.len() == group.order() {
        return "W".into();
    }
    // smallest generating set drawn from the Coxeter generators, if any
    let gens: Vec<usize> = group
        .generator_indices()
        .into_iter()
        .filter(|&g| v.contains(g))
        .collect();
    if Subgroup::generated_by(group, &gens) == *v {
        let names: Vec<String> = gens.iter().map(|&g| group.element(g).to_string()).collect();
        return format!("<{}>", names.join(", "));
    }
    format!("order {}", v.len())
}

/// Chambers, opposite pairs, Bruhat data and the closed lattice of the
/// flag model of `F_q^n`.
pub fn run_flag_building(n: usize, q: u32, seed: u64) -> Result<Report> {
    let mut report = Report::new("flag-building");
    report.param("n", n);
    report.param("q", q);
    report.param("seed", seed);

    let model = FlagModel::new(n, q)?;
    let building = model.building();
    let action = model.action();
    let group = model.group();
    report.count("chambers", building.len());
    report.count("opposite_pairs", model.opposite_pairs().len());
    report.count("weyl_group_order", group.order());

    let orbits = building.diagonal_orbit_count()?;
    report.count("diagonal_orbits", orbits);

    let mut cells: HashMap<RelativePosition, usize> = HashMap::new();
    let mut cell_violations = 0;
    for e in building.chambers() {
        let mut local: HashMap<RelativePosition, usize> = HashMap::new();
        for f in building.chambers() {
            *local.entry(relative_position(e, f)?).or_default() += 1;
        }
        for (w, c) in &local {
            if *c != (q as usize).pow(w.length() as u32) {
                cell_violations += 1;
            }
        }
        for (w, c) in local {
            *cells.entry(w).or_default() += c;
        }
    }
    report.count("distinct_relative_positions", cells.len());
    let n_factorial: usize = (1..=n).product();
    report.verdicts.push(Verdict::check(
        "diagonal orbits = |S_n|",
        orbits == n_factorial,
        "union-find over chamber pairs under generators of GL_n(F_q)",
    ).with_detail(format!("{orbits} orbits, |S_{n}| = {n_factorial}")));
    report.verdicts.push(Verdict::check(
        "diagonal orbits = attained relative positions",
        orbits == cells.len(),
        "relative position of every chamber pair",
    ));
    report.verdicts.push(
        Verdict::check(
            "Bruhat cells have q^l(w) chambers",
            cell_violations == 0 && cells.len() == n_factorial,
            "count of F per relative position, for every chamber E",
        )
        .with_detail(format!("{cell_violations} violating (E, w)")),
    );

    let subgroups = enumerate_subgroups(group)?;
    report.count("subgroups", subgroups.len());
    let lattice = action.enumerate_closed()?;
    report.count("closed_subgroups", lattice.len());
    report.count("closed_quotients", lattice.quotients().len());

    // explicit bijection with partial-flag quotients
    let types = face_types(n);
    let mut cube_ok = lattice.len() == 1 << (n - 1);
    let mut quotient_type: Vec<Option<usize>> = vec![None; lattice.len()];
    let mut structured = Vec::new();
    for (t, ty) in types.iter().enumerate() {
        let p = building.partial_flag_quotient(ty)?;
        match lattice.quotient_index(&p) {
            Some(j) if quotient_type[j].is_none() => {
                quotient_type[j] = Some(t);
                let paired = &lattice.subgroups()[lattice.subgroup_of_quotient(j)];
                cube_ok &= *paired == model.young_subgroup(ty)?;
                cube_ok &= action.stabilizer_subgroup(&p)? == model.young_subgroup(ty)?;
            }
            _ => cube_ok = false,
        }
        structured.push(p);
    }
    cube_ok &= quotient_type.iter().all(Option::is_some);
    if cube_ok {
        for a in 0..lattice.len() {
            for b in 0..lattice.len() {
                let (ta, tb) = (&types[quotient_type[a].unwrap()], &types[quotient_type[b].unwrap()]);
                let subset = ta.iter().all(|j| tb.contains(j));
                cube_ok &= subset == lattice.quotients()[a].leq(&lattice.quotients()[b])?;
            }
        }
    }
    let type_label = |t: usize| {
        let names: Vec<String> = types[t].iter().map(|j| j.to_string()).collect();
        format!("J={{{}}}", names.join(","))
    };
    report.verdicts.push(
        Verdict::check(
            &format!("Boolean cube of dimension {}", n - 1),
            cube_ok,
            "closed quotients matched to partial-flag quotients J, inclusion of J vs refinement, paired with Young subgroups <s_i : i not in J>",
        )
        .with_detail(if cube_ok { "yes" } else { "no" }),
    );

    let laws = check_galois_laws(action, &subgroups, &structured, RANDOM_PARTITIONS, seed)?;
    law_verdicts(&mut report, laws, structured.len(), RANDOM_PARTITIONS);
    lattice_verdicts(&mut report, &lattice, action)?;

    report.lattice = Some(LatticeReport::new(
        &lattice,
        group,
        |i| Some(subgroup_generators_label(&lattice.subgroups()[i], group)),
        |j| quotient_type[j].map(type_label),
    ));
    Ok(report)
}

/// The product model `B_1 × B_2` with `W = {id, w_1, w_2, w_flip}`.
pub fn run_product(m1: usize, m2: usize, seed: u64) -> Result<Report> {
    let mut report = Report::new("product");
    report.param("m1", m1);
    report.param("m2", m2);
    report.param("seed", seed);

    let action = product_pair_action(m1, m2)?;
    let group = action.group();
    let ground = m1 * m2;
    report.count("points", ground);
    report.count("domain_pairs", action.domain().len());
    report.count("weyl_group_order", group.order());

    let subgroups = enumerate_subgroups(group)?;
    report.count("subgroups", subgroups.len());
    let lattice = action.enumerate_closed()?;
    report.count("closed_subgroups", lattice.len());
    report.count("closed_quotients", lattice.quotients().len());

    let (pr1, pr2) = product_projections(m1, m2);
    let named = [
        ("one-block", Partition::one_block(ground)),
        ("pr_1", pr1),
        ("pr_2", pr2),
        ("identity", Partition::identity(ground)),
    ];
    let expected: HashSet<&Partition> = named.iter().map(|(_, p)| p).collect();
    let found: HashSet<&Partition> = lattice.quotients().iter().collect();
    report.verdicts.push(Verdict::check(
        "closed quotients = {one-block, pr_1, pr_2, identity}",
        expected == found,
        "subgroup sweep, fixed points of V -> W_{p^V}",
    ));

    let flip = Subgroup::generated_by(group, &[group.flip().expect("product model has a flip")]);
    let flip_closure = action.close_subgroup(&flip)?;
    report.verdicts.push(Verdict::check(
        "<w_flip> is not closed and closes to W",
        flip_closure != flip && flip_closure == Subgroup::whole(group),
        "W_{p^V} for V = <w_flip>",
    ));

    let structured: Vec<Partition> = named.iter().map(|(_, p)| p.clone()).collect();
    let laws = check_galois_laws(&action, &subgroups, &structured, RANDOM_PARTITIONS, seed)?;
    law_verdicts(&mut report, laws, structured.len(), RANDOM_PARTITIONS);
    lattice_verdicts(&mut report, &lattice, &action)?;

    report.lattice = Some(LatticeReport::new(
        &lattice,
        group,
        |i| Some(subgroup_generators_label(&lattice.subgroups()[i], group)),
        |j| {
            named
                .iter()
                .find(|(_, p)| *p == lattice.quotients()[j])
                .map(|(name, _)| name.to_string())
        },
    ));
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
struct HomRecord {
    generator_images: Vec<String>,
    kernel: Vec<String>,
    image_order: usize,
    injective: bool,
    case: String,
}

/// Long-element-pinned homomorphisms between two Weyl groups.
pub fn run_obstruction(source_spec: &str, target_spec: &str) -> Result<Report> {
    let mut report = Report::new("obstruction");
    report.param("source", source_spec);
    report.param("target", target_spec);

    let source = CoxeterGroup::from_spec(source_spec)?;
    let target = CoxeterGroup::from_spec(target_spec)?;
    let pin = (
        source.flip().expect("constructed groups carry a flip"),
        target.flip().expect("constructed groups carry a flip"),
    );
    report.param("pin", format!("{} -> {}", source.element(pin.0), target.element(pin.1)));
    report.count("source_order", source.order());
    report.count("target_order", target.order());

    let homs = enumerate_homomorphisms(&source, &target, Some(pin), false)?;
    let injective = homs.iter().filter(|h| h.is_injective()).count();
    report.count("pinned_homomorphisms", homs.len());
    report.count("injective", injective);
    report.count("non_injective", homs.len() - injective);

    // for (Z/2)^2 sources, read off the factor a kernel forces
    let product = match source.family() {
        CoxeterFamily::Involutions { r: 2 } => Some((product_pair_action(2, 2)?, product_projections(2, 2))),
        _ => None,
    };

    let mut records = Vec::new();
    let mut all_hom = true;
    let mut all_normal = true;
    for h in &homs {
        all_hom &= h.is_homomorphism(&source, &target);
        all_normal &= source.is_normal(h.kernel())?;
        let case = if h.is_injective() {
            "injective: long-element-preserving embedding".to_string()
        } else if let Some((action, (pr1, pr2))) = &product {
            let k = Subgroup::from_members(action.group(), h.kernel().members().to_vec())?;
            let p = action.finest_invariant_quotient(&k)?;
            let factor = if p == *pr1 {
                "pr_1 (B_1)".to_string()
            } else if p == *pr2 {
                "pr_2 (B_2)".to_string()
            } else {
                format!("a quotient with {} blocks", p.block_count())
            };
            format!("non-injective: image Z/2, boundary map factors through {factor}")
        } else if source.is_irreducible() {
            format!(
                "non-injective: non-trivial normal kernel of order {} in an irreducible source",
                h.kernel().len()
            )
        } else {
            format!("non-injective: kernel of order {}", h.kernel().len())
        };
        records.push(HomRecord {
            generator_images: source
                .generator_indices()
                .iter()
                .map(|&g| target.element(h.image(g)).to_string())
                .collect(),
            kernel: h.kernel().labels(&source),
            image_order: h.image_size(),
            injective: h.is_injective(),
            case,
        });
    }
    report.verdicts.push(Verdict::check(
        "every listed map is a pinned homomorphism",
        all_hom && homs.iter().all(|h| h.image(pin.0) == pin.1),
        "full multiplication table check",
    ));
    report.verdicts.push(Verdict::check(
        "every kernel is normal",
        all_normal,
        "conjugation by every source element",
    ));
    report.verdicts.push(
        Verdict::check(
            "superrigidity obstruction (no injective long-element-preserving homomorphism)",
            injective == 0,
            "exhaustive generator-image search",
        )
        .with_detail(format!("{injective} injective of {} pinned", homs.len()))
        .finding(),
    );
    report.details = Some(serde_json::json!({ "homomorphisms": records }));
    Ok(report)
}

/// How an `embed-check` map is specified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapSpec {
    Identity,
    Matrix(String),
    Random(Option<u64>),
}

impl MapSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "identity" {
            return Ok(Self::Identity);
        }
        if let Some(entries) = text.strip_prefix("matrix:") {
            return Ok(Self::Matrix(entries.to_string()));
        }
        if text == "random" {
            return Ok(Self::Random(None));
        }
        if let Some(seed) = text.strip_prefix("random:") {
            let seed = seed
                .parse()
                .map_err(|_| Error::Parse(format!("bad random seed {seed:?}")))?;
            return Ok(Self::Random(Some(seed)));
        }
        Err(Error::Parse(format!(
            "map spec {text:?}: expected identity, matrix:<entries> or random:<seed>"
        )))
    }
}

/// Runs the opposition, equivariance and face-map checks on one map.
pub fn run_embed_check(n: usize, q: u32, spec: &MapSpec, seed: u64) -> Result<Report> {
    let mut report = Report::new("embed-check");
    report.param("n", n);
    report.param("q", q);
    let model = FlagModel::new(n, q)?;
    let map = match spec {
        MapSpec::Identity => {
            report.param("map", "identity");
            ChamberMap::identity(&model)
        }
        MapSpec::Matrix(entries) => {
            let g = Matrix::parse(n, q, entries)?;
            if !g.is_invertible() {
                return Err(Error::Parse("matrix is singular".into()));
            }
            report.param("map", format!("matrix:{entries}"));
            ChamberMap::from_matrix(&model, &g)?
        }
        MapSpec::Random(s) => {
            let s = s.unwrap_or(seed);
            report.param("map", format!("random:{s}"));
            ChamberMap::random_permutation(&model, s)
        }
    };
    report.count("chambers", model.building().len());
    report.count("opposite_pairs", model.opposite_pairs().len());

    let b = model.building();
    let describe = |v: &Violation| match *v {
        Violation::NotOpposite { e, f } | Violation::NotEquivariant { e, f, .. } => {
            format!("{v}; E = {}, F = {}", b.chamber(e), b.chamber(f))
        }
    };
    let opposition = find_opposition_violation(&model, &model, &map)?;
    report.verdicts.push(match &opposition {
        None => Verdict::check("opposition preserving", true, "all opposite source pairs"),
        Some(v) => Verdict::check("opposition preserving", false, "all opposite source pairs")
            .with_detail(describe(v)),
    });
    let skipped = "not evaluated: requires the previous check";
    let equivariance = if opposition.is_none() {
        find_equivariance_violation(&model, &model, &map)?
    } else {
        None
    };
    report.verdicts.push(match (&opposition, &equivariance) {
        (Some(_), _) => Verdict::check("W-equivariant", false, "every w in S_n on every opposite pair")
            .with_detail(skipped),
        (None, None) => Verdict::check("W-equivariant", true, "every w in S_n on every opposite pair"),
        (None, Some(v)) => Verdict::check("W-equivariant", false, "every w in S_n on every opposite pair")
            .with_detail(describe(v)),
    });
    let method = "blockwise images for every face type J, compared across J ⊂ J'";
    if opposition.is_none() && equivariance.is_none() {
        match induced_face_maps(&model, &model, &map) {
            Ok(faces) => {
                let sizes: BTreeMap<String, usize> = faces
                    .maps
                    .iter()
                    .map(|m| (format!("{:?}", m.face_type), m.images.len()))
                    .collect();
                report.details = Some(serde_json::json!({ "face_map_sizes": sizes }));
                report.verdicts.push(Verdict::check("descends to face maps", true, method));
            }
            Err(Error::Structural(msg)) => {
                report
                    .verdicts
                    .push(Verdict::check("descends to face maps", false, method).with_detail(msg));
            }
            Err(e) => return Err(e),
        }
    } else {
        report
            .verdicts
            .push(Verdict::check("descends to face maps", false, method).with_detail(skipped));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_building_small() {
        let r = run_flag_building(2, 2, crate::DEFAULT_SEED).unwrap();
        assert_eq!(r.counts["chambers"], 3);
        assert_eq!(r.counts["opposite_pairs"], 6);
        assert_eq!(r.counts["diagonal_orbits"], 2);
        assert_eq!(r.counts["closed_quotients"], 2);
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn flag_building_rank_two() {
        let r = run_flag_building(3, 2, crate::DEFAULT_SEED).unwrap();
        assert_eq!(r.counts["chambers"], 21);
        assert_eq!(r.counts["opposite_pairs"], 168);
        assert_eq!(r.counts["diagonal_orbits"], 6);
        assert_eq!(r.counts["closed_quotients"], 4);
        assert_eq!(r.verdict("Boolean cube of dimension 2").unwrap().detail.as_deref(), Some("yes"));
        assert!(r.passed(), "{}", r.to_text());
        let dot = r.to_dot().unwrap();
        assert!(dot.contains("style=dashed"));
    }

    #[test]
    fn product_scenarios() {
        for (a, b) in [(3, 4), (2, 2)] {
            let r = run_product(a, b, crate::DEFAULT_SEED).unwrap();
            assert_eq!(r.counts["closed_quotients"], 4);
            assert!(r.passed(), "{}", r.to_text());
        }
        assert!(matches!(run_product(1, 5, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn obstruction_scenarios() {
        let r = run_obstruction("S4", "S3").unwrap();
        assert_eq!(r.counts["injective"], 0);
        assert!(r.passed());

        let r = run_obstruction("Z2^2", "S3").unwrap();
        assert_eq!(r.counts["pinned_homomorphisms"], 2);
        assert_eq!(r.counts["non_injective"], 2);
        let text = r.to_json();
        assert!(text.contains("pr_1 (B_1)") && text.contains("pr_2 (B_2)"));

        let r = run_obstruction("S3", "S2").unwrap();
        assert_eq!(r.counts["pinned_homomorphisms"], 1);
        assert_eq!(r.counts["injective"], 0);
        let kernel = &r.details.as_ref().unwrap()["homomorphisms"][0]["kernel"];
        assert_eq!(kernel.as_array().unwrap().len(), 3);

        assert!(matches!(run_obstruction("B3", "S3"), Err(Error::Domain(_))));
        assert!(run_obstruction("S3", "S3").unwrap().to_dot().is_err());
    }

    #[test]
    fn embed_check_scenarios() {
        let r = run_embed_check(3, 2, &MapSpec::Identity, 0).unwrap();
        assert!(r.passed());
        let spec = MapSpec::parse("matrix:1,1,0,0,1,0,1,0,1").unwrap();
        assert!(run_embed_check(3, 2, &spec, 0).unwrap().passed());
        let r = run_embed_check(3, 2, &MapSpec::parse("random:42").unwrap(), 0).unwrap();
        assert!(!r.passed());
        assert!(r.verdicts.iter().any(|v| !v.pass && v.detail.as_deref().is_some_and(|d| d.contains("E = "))));
        assert!(matches!(MapSpec::parse("matrix"), Err(Error::Parse(_))));
        let singular = MapSpec::parse("matrix:1,1,0,1,1,0,0,0,1").unwrap();
        assert!(matches!(run_embed_check(3, 2, &singular, 0), Err(Error::Parse(_))));
        let short = MapSpec::parse("matrix:1,0").unwrap();
        assert!(matches!(run_embed_check(3, 2, &short, 0), Err(Error::Parse(_))));
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_product(3, 4, 5).unwrap().to_json();
        let b = run_product(3, 4, 5).unwrap().to_json();
        assert_eq!(a, b);
    }
}
