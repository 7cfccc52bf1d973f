//! One function per subcommand, each returning the records it emits.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use clap::ValueEnum;
use serde_json::{json, Value};
use sumfree::abelian::{f_group, f_max_group, mu, AbelianGroup};
use sumfree::bits::{self, Mask};
use sumfree::constructions::{
    ce_odd_family, exponent7_family, index3_family, interval_family, prism, z2k_family,
    zn_prism_graph, Family, Ground,
};
use sumfree::enumerate::{
    enum_record_with, enumerate_maximal_sum_free_with, small_sumset_count, Method, Ratio,
};
use sumfree::graph::Graph;
use sumfree::linkgraph::{link_family, link_pair_even, link_single_even};
use sumfree::miscount::{count_mis, enumerate_mis_with_cap};
use sumfree::setcore::{GroundSet, IntSubset};
use sumfree::verify::{dprime_table, run_all, run_check, SuiteConfig, CHECK_NAMES};
use sumfree::Count;

pub fn enumerate(n: u32, method: Method, list: bool, max_n: u32) -> Result<Vec<Value>> {
    if n > max_n {
        bail!("n = {n} exceeds --max-n {max_n}");
    }
    if list {
        let sets = enumerate_maximal_sum_free_with(n, max_n, true)?;
        return Ok(sets.iter().map(|s| json!({ "set": s.to_vec() })).collect());
    }
    Ok(vec![serde_json::to_value(enum_record_with(
        n, method, true, max_n,
    )?)?])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphFamily {
    Path,
    Cycle,
    Complete,
    Matching,
    Prism,
    SingleEven,
    Link,
    ZnPrism,
}

/// Parameters shared by the graph-building subcommands.
#[derive(Clone, Debug, Default)]
pub struct GraphArgs {
    pub n: Option<u32>,
    pub m: Option<u32>,
    pub s: Option<String>,
}

fn need(v: Option<u32>, flag: &str) -> Result<u32> {
    v.ok_or_else(|| anyhow!("--{flag} is required here"))
}

/// Parses `1,4,7` (or an empty string) into a list of numbers.
pub fn parse_list(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().with_context(|| format!("bad list entry {t:?}")))
        .collect()
}

fn family_link(n: u32, m: u32, s: &str) -> Result<Graph> {
    let s = IntSubset::from_elems(GroundSet::new(n)?, parse_list(s)?)?;
    Ok(link_family(n, m, &s)?)
}

pub fn family_graph(family: GraphFamily, args: &GraphArgs) -> Result<Graph> {
    let size = || need(args.n, "n").map(|n| n as usize);
    Ok(match family {
        GraphFamily::Path => Graph::path(size()?)?,
        GraphFamily::Cycle => Graph::cycle(size()?)?,
        GraphFamily::Complete => Graph::complete(size()?)?,
        GraphFamily::Matching => Graph::matching(size()?)?,
        GraphFamily::Prism => prism(),
        GraphFamily::SingleEven => link_single_even(need(args.n, "n")?, need(args.m, "m")?)?,
        GraphFamily::Link => family_link(
            need(args.n, "n")?,
            need(args.m, "m")?,
            args.s.as_deref().unwrap_or(""),
        )?,
        GraphFamily::ZnPrism => zn_prism_graph(need(args.n, "n")?)?.graph,
    })
}

fn labels(g: &Graph, vs: Mask) -> Vec<i64> {
    bits::ones(vs).map(|v| g.label(v)).collect()
}

fn graph_summary(g: &Graph) -> Value {
    json!({
        "vertices": g.n(),
        "edges": g.without_loops().edge_count(),
        "loops": labels(g, g.loops()),
    })
}

pub fn mis(g: &Graph, name: &str, with_sets: bool, cap: Count) -> Result<Vec<Value>> {
    let mut rec = json!({ "graph": name });
    merge(&mut rec, graph_summary(g));
    if with_sets {
        let sets = enumerate_mis_with_cap(g, cap)?;
        rec["count"] = json!(sets.len());
        rec["sets"] = json!(sets.iter().map(|&s| labels(g, s)).collect::<Vec<_>>());
    } else {
        rec["count"] = serde_json::to_value(count_mis(g)?)?;
    }
    Ok(vec![rec])
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

pub fn read_graph(path: &Path) -> Result<(String, Graph)> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let g = Graph::from_text(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok((text, g))
}

/// `L(n, m, S)` or `L_x[O]` / `L_{x,x'}[O]`, with the graph text attached.
pub fn link(
    n: u32,
    m: Option<u32>,
    s: Option<&str>,
    even: Option<u32>,
    even2: Option<u32>,
) -> Result<Vec<Value>> {
    let (g, mut rec) = match (m, even) {
        (Some(m), None) => {
            let s = s.unwrap_or("");
            (
                family_link(n, m, s)?,
                json!({ "n": n, "m": m, "s": parse_list(s)? }),
            )
        }
        (None, Some(x)) => match even2 {
            Some(x2) => (
                link_pair_even(n, x, x2)?,
                json!({ "n": n, "even": [x, x2] }),
            ),
            None => (link_single_even(n, x)?, json!({ "n": n, "even": [x] })),
        },
        _ => bail!("give either --m (with optional --s) or --even"),
    };
    merge(&mut rec, graph_summary(&g));
    rec["text"] = json!(g.to_text());
    Ok(vec![rec])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SetFamily {
    CeOdd,
    Interval,
    Z2k,
    Index3,
    Exponent7,
}

fn build_family(family: SetFamily, n: Option<u32>, group: Option<&str>) -> Result<Family> {
    let group = || -> Result<AbelianGroup> {
        let desc = group.ok_or_else(|| anyhow!("--group is required for this family"))?;
        Ok(AbelianGroup::parse(desc)?)
    };
    Ok(match family {
        SetFamily::CeOdd => ce_odd_family(need(n, "n")?)?,
        SetFamily::Interval => interval_family(need(n, "n")?)?,
        SetFamily::Z2k => {
            let k = match n {
                Some(k) => k as usize,
                None => {
                    let g = group()?;
                    if g.factors().iter().any(|&f| f != 2) {
                        bail!("{} is not an elementary abelian 2-group", g.descriptor());
                    }
                    g.factors().len()
                }
            };
            z2k_family(k)?
        }
        SetFamily::Index3 => index3_family(&group()?)?,
        SetFamily::Exponent7 => exponent7_family(&group()?)?,
    })
}

fn member_value(ground: &Ground, m: Mask) -> Value {
    match ground {
        Ground::Int(_) => json!(bits::ones(m).collect::<Vec<_>>()),
        Ground::Group(_) => json!(ground.describe(m)),
    }
}

/// Members as one record each, or with `check` a single verification record.
pub fn construct(
    family: SetFamily,
    n: Option<u32>,
    group: Option<&str>,
    check: bool,
) -> Result<Vec<Value>> {
    let fam = build_family(family, n, group)?;
    let ground = fam.ground.descriptor();
    if check {
        let c = fam.check()?;
        let mut rec = json!({
            "family": fam.name,
            "ground": ground,
            "size": fam.len(),
            "claimed_size": serde_json::to_value(fam.claimed_size)?,
            "passed": c.passed(),
        });
        merge(&mut rec, serde_json::to_value(&c)?);
        return Ok(vec![rec]);
    }
    Ok(fam
        .members
        .iter()
        .map(|&m| json!({ "family": fam.name, "ground": ground, "member": member_value(&fam.ground, m) }))
        .collect())
}

/// The spelling used on the command line.
pub fn value_name(v: &impl ValueEnum) -> String {
    v.to_possible_value()
        .map(|p| p.get_name().to_string())
        .unwrap_or_default()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GroupOp {
    Mu,
    Fmax,
    F,
}

pub fn group(desc: &str, op: GroupOp) -> Result<Vec<Value>> {
    let g = AbelianGroup::parse(desc)?;
    let (name, value) = match op {
        GroupOp::Mu => ("mu", json!(mu(&g)?)),
        GroupOp::Fmax => ("fmax", serde_json::to_value(f_max_group(&g)?)?),
        GroupOp::F => ("f", serde_json::to_value(f_group(&g)?)?),
    };
    Ok(vec![
        json!({ "group": g.descriptor(), "order": g.order(), "op": name, "value": value }),
    ])
}

pub fn verify(check: Option<&str>, seed: u64) -> Result<Vec<Value>> {
    let cfg = SuiteConfig {
        seed,
        ..SuiteConfig::default()
    };
    let reports = match check {
        Some(name) => {
            if !CHECK_NAMES.contains(&name) {
                bail!(
                    "unknown check {name:?}; known checks: {}",
                    CHECK_NAMES.join(", ")
                );
            }
            vec![run_check(name, &cfg)?]
        }
        None => run_all(&cfg)?,
    };
    Ok(reports
        .iter()
        .map(|r| {
            json!({
                "name": r.name,
                "passed": r.passed(),
                "instances_checked": r.instances_checked,
                "failures": r.failures,
                "notes": r.notes,
            })
        })
        .collect())
}

pub fn dprime_constants(n_min: u32, n_max: u32) -> Result<Vec<Value>> {
    dprime_table(n_min, n_max)?
        .into_iter()
        .map(|row| Ok(serde_json::to_value(row)?))
        .collect()
}

/// `f_max(n) / 2^{n/4}` for every `n` in range.
pub fn fmax_constants(n_min: u32, n_max: u32, max_n: u32) -> Result<Vec<Value>> {
    if n_max > max_n {
        bail!("--n-max {n_max} exceeds --max-n {max_n}");
    }
    (n_min.max(1)..=n_max)
        .map(|n| {
            let r = enum_record_with(n, Method::Branch, true, max_n)?;
            let ratio = Ratio::over_pow2_quarter(r.f_max, n);
            Ok(json!({
                "n": n,
                "residue_mod_4": n % 4,
                "f_max": serde_json::to_value(r.f_max)?,
                "ratio": ratio.to_f64(),
                "ratio_exact": ratio.exact.then(|| ratio.to_string()),
            }))
        })
        .collect()
}

pub fn sumset_census(d: u32, s: u32, r: f64, delta: f64) -> Result<Vec<Value>> {
    Ok(vec![serde_json::to_value(small_sumset_count(
        d, s, r, delta,
    )?)?])
}
