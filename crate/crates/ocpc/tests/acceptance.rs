//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use http_body_util::BodyExt;
use percent_encoding::{utf8_percent_encode, NON_ALPHANUMERIC};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde_json::{json, Value};
use tower::ServiceExt;

use common::{fix1, fixture};
use ocpc::render::json as rj;
use ocpc::synth::{random_log, RandomLogConfig};
use ocpc::{export_jsonocel, export_xmlocel, parse_jsonocel, parse_xmlocel};
use ocpc_core::{
    compare_models, discover_ocdfg, discover_ocpn, flatten, AttrValue, Coordinate, DimValue, Dimension, Event,
    GridAxis, Materialization, Ocel, ProcessCube,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------- oracle

fn value_of(map: &BTreeMap<ocpc_core::AttributeName, AttrValue>, name: &ocpc_core::AttributeName) -> DimValue {
    map.get(name).cloned().map_or(DimValue::Null, DimValue::Value)
}

/// Values `v` for which the membership predicate holds for one dimension,
/// evaluated directly from the definitions.
fn predicate_values(
    log: &Ocel,
    e: &Event,
    dim: &Dimension,
    mode: Materialization,
    candidates: &BTreeSet<DimValue>,
) -> BTreeSet<DimValue> {
    match dim {
        Dimension::EventAttr(n) => candidates
            .iter()
            .filter(|v| **v == value_of(&e.vmap, n))
            .cloned()
            .collect(),
        Dimension::ObjectAttr { otype, name } => {
            let scoped: Vec<DimValue> = e
                .omap
                .iter()
                .filter_map(|o| log.object(o))
                .filter(|o| &o.otype == otype)
                .map(|o| value_of(&o.ovmap, name))
                .collect();
            let mut out = BTreeSet::new();
            for v in candidates {
                let holds = match (mode, v) {
                    // No scoped object carries the attribute.
                    (Materialization::Existence, DimValue::Null) => scoped.iter().all(|s| *s == DimValue::Null),
                    (Materialization::Existence, _) => scoped.iter().any(|s| s == v),
                    (Materialization::All, DimValue::Null) => scoped.iter().all(|s| *s == DimValue::Null),
                    (Materialization::All, _) => !scoped.is_empty() && scoped.iter().all(|s| s == v),
                };
                if holds {
                    out.insert(v.clone());
                }
            }
            out
        }
    }
}

fn candidates(log: &Ocel, dim: &Dimension) -> BTreeSet<DimValue> {
    let mut out: BTreeSet<DimValue> = match dim {
        Dimension::EventAttr(n) => log
            .events()
            .iter()
            .filter_map(|e| e.vmap.get(n))
            .cloned()
            .map(DimValue::Value)
            .collect(),
        Dimension::ObjectAttr { otype, name } => log
            .objects()
            .values()
            .filter(|o| &o.otype == otype)
            .filter_map(|o| o.ovmap.get(name))
            .cloned()
            .map(DimValue::Value)
            .collect(),
    };
    out.insert(DimValue::Null);
    out
}

fn oracle_cells(
    log: &Ocel,
    dims: &[Dimension],
    mode: Materialization,
) -> BTreeMap<Vec<DimValue>, BTreeSet<ocpc_core::EventId>> {
    let cands: Vec<BTreeSet<DimValue>> = dims.iter().map(|d| candidates(log, d)).collect();
    let mut cells: BTreeMap<Vec<DimValue>, BTreeSet<ocpc_core::EventId>> = BTreeMap::new();
    for e in log.events() {
        let per_dim: Vec<Vec<DimValue>> = dims
            .iter()
            .zip(&cands)
            .map(|(d, c)| predicate_values(log, e, d, mode, c).into_iter().collect())
            .collect();
        let mut keys: Vec<Vec<DimValue>> = vec![Vec::new()];
        for vals in &per_dim {
            keys = keys
                .into_iter()
                .flat_map(|k| {
                    vals.iter().map(move |v| {
                        let mut k = k.clone();
                        k.push(v.clone());
                        k
                    })
                })
                .collect();
        }
        for k in keys {
            cells.entry(k).or_default().insert(e.id.clone());
        }
    }
    cells
}

struct Generated {
    log: Arc<Ocel>,
    dims: Vec<Dimension>,
}

/// 200 random logs with at least one dimension, and up to three chosen dimensions each.
fn generated_logs() -> Vec<Generated> {
    let cfg = RandomLogConfig {
        max_events: 1000,
        max_types: 5,
        max_objects: 150,
    };
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < 200 {
        let log = random_log(seed, &cfg);
        let mut rng = StdRng::seed_from_u64(seed ^ 0x5eed);
        seed += 1;
        let mut all = ocpc_core::list_dimensions(&log);
        if all.is_empty() {
            continue;
        }
        all.shuffle(&mut rng);
        let k = 1 + (seed as usize % 3).min(all.len() - 1);
        all.truncate(k);
        out.push(Generated {
            log: Arc::new(log),
            dims: all,
        });
    }
    out
}

// ---------------------------------------------------------------- criteria

fn materialization_oracle(logs: &[Generated]) -> Outcome {
    let start = Instant::now();
    let mut cells = 0usize;
    let max_events = logs.iter().map(|g| g.log.len()).max().unwrap_or(0);
    let max_types = logs.iter().map(|g| g.log.object_types().len()).max().unwrap_or(0);
    for (i, g) in logs.iter().enumerate() {
        for mode in [Materialization::Existence, Materialization::All] {
            let cube = ProcessCube::build(g.log.clone(), g.dims.clone(), mode).map_err(|e| e.to_string())?;
            let got = cube.cell_map();
            let want = oracle_cells(&g.log, &g.dims, mode);
            ensure(got == want, || {
                format!("log #{i} ({mode}) dims {:?}: cube and oracle disagree", g.dims)
            })?;
            cells += got.len();
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs <= 60.0, || format!("took {secs:.1}s > 60s"))?;
    Ok(format!(
        "200 logs (max {max_events} events, {max_types} types), both modes, {cells} cells exact in {secs:.1}s"
    ))
}

fn semantics_anchors() -> Outcome {
    let log = Arc::new(fix1());
    let dim = Dimension::object("item", "product");
    let coord: Coordinate = [(dim.clone(), DimValue::from("X"))].into_iter().collect();
    let cell = |mode| -> Result<BTreeSet<String>, String> {
        let cube = ProcessCube::build(log.clone(), vec![dim.clone()], mode).map_err(|e| e.to_string())?;
        Ok(cube
            .cell_events(&coord)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|e| e.to_string())
            .collect())
    };
    let exists = cell(Materialization::Existence)?;
    let all = cell(Materialization::All)?;
    let want_exists: BTreeSet<String> = ["e1", "e2", "e4"].map(String::from).into();
    let want_all: BTreeSet<String> = ["e2".to_owned()].into();
    ensure(exists == want_exists, || format!("Existence X = {exists:?}"))?;
    ensure(all == want_all, || format!("All X = {all:?}"))?;
    ensure(all.is_subset(&exists) && all.len() < exists.len(), || {
        "All X not strictly inside Existence X".into()
    })?;
    Ok(format!("Existence X = {exists:?} strictly contains All X = {all:?}"))
}

fn partition_and_subset(logs: &[Generated]) -> Outcome {
    let mut checked = (0usize, 0usize);
    for (i, g) in logs.iter().enumerate() {
        for d in ocpc_core::list_dimensions(&g.log) {
            match &d {
                Dimension::EventAttr(_) => {
                    let cube = ProcessCube::build(g.log.clone(), vec![d.clone()], Materialization::Existence)
                        .map_err(|e| e.to_string())?;
                    let mut seen = BTreeSet::new();
                    for evs in cube.cell_map().into_values() {
                        for e in evs {
                            ensure(seen.insert(e.clone()), || {
                                format!("log #{i}: {e} in two cells of {}", d.label())
                            })?;
                        }
                    }
                    ensure(seen.len() == g.log.len(), || {
                        format!("log #{i}: {} does not cover every event", d.label())
                    })?;
                    checked.0 += 1;
                }
                Dimension::ObjectAttr { .. } => {
                    let ex = ProcessCube::build(g.log.clone(), vec![d.clone()], Materialization::Existence)
                        .map_err(|e| e.to_string())?;
                    let all = ProcessCube::build(g.log.clone(), vec![d.clone()], Materialization::All)
                        .map_err(|e| e.to_string())?;
                    let ex = ex.cell_map();
                    for (k, evs) in all.cell_map() {
                        if k[0] == DimValue::Null {
                            continue;
                        }
                        let sup = ex.get(&k).cloned().unwrap_or_default();
                        ensure(evs.is_subset(&sup), || {
                            format!("log #{i}: All {:?} not within Existence", k[0])
                        })?;
                    }
                    checked.1 += 1;
                }
            }
        }
    }
    Ok(format!(
        "{} event-attribute partitions, {} object-attribute subset checks",
        checked.0, checked.1
    ))
}

fn dfg_identities(logs: &[Generated]) -> Outcome {
    let mut types = 0usize;
    for (i, g) in logs.iter().enumerate() {
        let m = discover_ocdfg(&g.log);
        for (t, dfg) in &m.types {
            let traces = flatten(&g.log, t).map_err(|e| e.to_string())?;
            let steps: u64 = traces.iter().map(|tr| tr.steps.len() as u64 - 1).sum();
            let edges: u64 = dfg.edges.values().map(|s| s.frequency).sum();
            ensure(edges == steps, || {
                format!("log #{i} {t}: edges {edges} != steps {steps}")
            })?;
            let starts: u64 = dfg.start.values().sum();
            let ends: u64 = dfg.end.values().sum();
            let n = traces.len() as u64;
            ensure(starts == n && ends == n, || {
                format!("log #{i} {t}: start {starts} end {ends} traces {n}")
            })?;
            for s in dfg.edges.values() {
                ensure(s.min >= 0.0 && s.min <= s.mean && s.mean <= s.max, || {
                    format!("log #{i} {t}: bad durations {s:?}")
                })?;
            }
            types += 1;
        }
    }
    Ok(format!("{types} per-type graphs"))
}

fn round_trip() -> Outcome {
    let mut logs: Vec<Ocel> = (0..100)
        .map(|s| random_log(10_000 + s, &RandomLogConfig::default()))
        .collect();
    logs.push(fix1());
    for (i, log) in logs.iter().enumerate() {
        let j = parse_jsonocel(&export_jsonocel(log)).map_err(|e| format!("log #{i} json: {e}"))?;
        ensure(&j == log, || format!("log #{i}: JSON round trip differs"))?;
        let xml = export_xmlocel(log).map_err(|e| format!("log #{i} xml export: {e}"))?;
        let x = parse_xmlocel(&xml).map_err(|e| format!("log #{i} xml: {e}"))?;
        ensure(&x == log, || format!("log #{i}: XML round trip differs"))?;
    }
    let xml_fixture = parse_xmlocel(&std::fs::read(fixture("fix1.xmlocel")).unwrap()).map_err(|e| e.to_string())?;
    ensure(xml_fixture == fix1(), || "XML fixture differs from JSON fixture".into())?;
    Ok(format!("{} logs exact in JSON and XML", logs.len()))
}

fn bench_lines(args: &[&str]) -> Result<Vec<Value>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_ocpc"))
        .arg("bench")
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        String::from_utf8_lossy(&out.stderr).into_owned()
    })?;
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).map_err(|e| e.to_string()))
        .collect()
}

fn scaling_events() -> Outcome {
    let start = Instant::now();
    let lines = bench_lines(&[
        "--events",
        "1000,5000,10000,20000",
        "--event-attrs",
        "4",
        "--object-attrs",
        "4",
        "--reps",
        "5",
    ])?;
    let summary = &lines.last().ok_or("no output")?["summary"];
    let r2 = summary["events_fit"]["r_squared"].as_f64().ok_or("no fit")?;
    let times: Vec<String> = lines
        .iter()
        .filter_map(|l| l["sample"]["seconds"].as_f64())
        .map(|s| format!("{s:.3}"))
        .collect();
    let secs = start.elapsed().as_secs_f64();
    ensure(r2 >= 0.95, || format!("R^2 = {r2:.4} < 0.95 (times {times:?})"))?;
    ensure(secs <= 600.0, || format!("took {secs:.0}s > 600s"))?;
    Ok(format!("R^2 = {r2:.4}, build seconds {times:?}, check took {secs:.1}s"))
}

fn scaling_object_attrs() -> Outcome {
    let lines = bench_lines(&[
        "--events",
        "20000",
        "--event-attrs",
        "4",
        "--object-attrs",
        "0,1,2,3,4",
        "--reps",
        "5",
    ])?;
    let summary = &lines.last().ok_or("no output")?["summary"]["object_attrs"];
    let times: Vec<f64> = summary["seconds"]
        .as_array()
        .ok_or("no seconds")?
        .iter()
        .filter_map(Value::as_f64)
        .collect();
    let shown: Vec<String> = times.iter().map(|s| format!("{s:.3}")).collect();
    ensure(summary["monotone"] == true, || format!("not monotone: {shown:?}"))?;
    Ok(format!(
        "monotone over 0..=4 object attributes {shown:?}; superlinear: {}",
        summary["superlinear"]
    ))
}

// ------------------------------------------------------- surface agreement

struct Http {
    app: axum::Router,
    rt: tokio::runtime::Runtime,
}

impl Http {
    fn call(&self, method: Method, uri: &str, body: Vec<u8>) -> Result<(StatusCode, Vec<u8>), String> {
        self.rt.block_on(async {
            let req = Request::builder()
                .method(method)
                .uri(uri)
                .body(Body::from(body))
                .map_err(|e| e.to_string())?;
            let resp = self.app.clone().oneshot(req).await.map_err(|e| e.to_string())?;
            let status = resp.status();
            let body = resp
                .into_body()
                .collect()
                .await
                .map_err(|e| e.to_string())?
                .to_bytes()
                .to_vec();
            Ok((status, body))
        })
    }

    fn ok(&self, method: Method, uri: &str, body: Vec<u8>) -> Result<Vec<u8>, String> {
        let (status, body) = self.call(method, uri, body)?;
        ensure(status.is_success(), || {
            format!("{uri}: {status} {}", String::from_utf8_lossy(&body))
        })?;
        Ok(body)
    }

    fn handle(&self, method: Method, uri: &str, body: Value) -> Result<String, String> {
        let b = self.ok(method, uri, body.to_string().into_bytes())?;
        let v: Value = serde_json::from_slice(&b).map_err(|e| e.to_string())?;
        v["handle"]
            .as_str()
            .map(str::to_owned)
            .ok_or_else(|| "no handle".into())
    }
}

fn cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_ocpc"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("ocpc {args:?}: {}", String::from_utf8_lossy(&out.stderr))
    })?;
    Ok(out.stdout)
}

fn json_of(bytes: &[u8]) -> Result<Value, String> {
    serde_json::from_slice(bytes).map_err(|e| e.to_string())
}

fn surface_agreement() -> Outcome {
    let path = fixture("fix1.jsonocel");
    let path_s = path.to_string_lossy().into_owned();
    let raw = std::fs::read(&path).map_err(|e| e.to_string())?;
    let http = Http {
        app: ocpc::service::router(ocpc::service::AppState::new(ocpc::service::Config::default())),
        rt: tokio::runtime::Runtime::new().map_err(|e| e.to_string())?,
    };
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut steps = Vec::new();
    let mut agree = |step: &str, lib: Vec<u8>, cli: Vec<u8>, http: Vec<u8>| -> Result<(), String> {
        ensure(lib == cli, || format!("{step}: library and CLI differ"))?;
        ensure(lib == http, || format!("{step}: library and HTTP differ"))?;
        steps.push(step.to_owned());
        Ok(())
    };

    // upload
    let log = Arc::new(parse_jsonocel(&raw).map_err(|e| e.to_string())?);
    let up = json_of(&http.ok(Method::POST, "/logs", raw.clone())?)?;
    let h = up["handle"].as_str().ok_or("no handle")?.to_owned();
    agree(
        "upload",
        rj::to_bytes(&rj::log_summary(&log)),
        cli(&["info", &path_s, "--out", "json"])?,
        rj::to_bytes(&up["summary"]),
    )?;

    // build + grid
    let channel = Dimension::event("channel");
    let product = Dimension::object("item", "product");
    let cube = ProcessCube::build(
        log.clone(),
        vec![channel.clone(), product.clone()],
        Materialization::Existence,
    )
    .map_err(|e| e.to_string())?;
    let c = http.handle(
        Method::POST,
        &format!("/logs/{h}/cubes"),
        json!({"dims": ["event:channel", "object:item.product"], "mode": "existence"}),
    )?;
    let grid = cube
        .grid_view(&GridAxis::Dim(channel.clone()), &GridAxis::Dim(product.clone()))
        .map_err(|e| e.to_string())?;
    agree(
        "grid",
        rj::to_bytes(&rj::grid(&grid)),
        cli(&[
            "grid",
            &path_s,
            "--dims",
            "event:channel,object:item.product",
            "--mode",
            "existence",
            "--rows",
            "channel",
            "--cols",
            "item.product",
            "--out",
            "json",
        ])?,
        http.ok(
            Method::GET,
            &format!("/cubes/{c}/grid?rows=channel&cols=item.product"),
            Vec::new(),
        )?,
    )?;

    // slice channel=web, item.product=X
    let sliced = cube
        .slice(&channel, &"web".into())
        .and_then(|s| s.slice(&product, &"X".into()))
        .map_err(|e| e.to_string())?;
    let cell_log = sliced.materialize_all();
    let s1 = http.handle(
        Method::POST,
        &format!("/cubes/{c}/slice"),
        json!({"dim": "channel", "value": "web"}),
    )?;
    let s2 = http.handle(
        Method::POST,
        &format!("/cubes/{s1}/slice"),
        json!({"dim": "item.product", "value": "X"}),
    )?;
    let cell_file = tmp.path().join("web-x.jsonocel");
    let cell_s = cell_file.to_string_lossy().into_owned();
    cli(&[
        "slice",
        &path_s,
        "--dims",
        "event:channel,object:item.product",
        "--at",
        "channel=web",
        "--at",
        "item.product=X",
        "-o",
        &cell_s,
    ])?;
    agree(
        "slice",
        export_jsonocel(&cell_log),
        std::fs::read(&cell_file).map_err(|e| e.to_string())?,
        http.ok(Method::GET, &format!("/cubes/{s2}/cells/_/log"), Vec::new())?,
    )?;

    // discover on the sliced cell
    agree(
        "discover ocdfg",
        rj::to_bytes(&rj::ocdfg(&discover_ocdfg(&cell_log), 0)),
        cli(&["discover", &cell_s, "--model", "ocdfg", "--out", "json"])?,
        http.ok(Method::GET, &format!("/cubes/{s2}/cells/_/ocdfg"), Vec::new())?,
    )?;
    agree(
        "discover ocpn",
        rj::to_bytes(&rj::ocpn(&discover_ocpn(&cell_log))),
        cli(&["discover", &cell_s, "--model", "ocpn", "--out", "json"])?,
        http.ok(Method::GET, &format!("/cubes/{s2}/cells/_/ocpn"), Vec::new())?,
    )?;
    agree(
        "discover dot",
        ocpc::render::dot::ocdfg(&discover_ocdfg(&cell_log), 0).into_bytes(),
        cli(&["discover", &cell_s, "--model", "ocdfg", "--out", "dot"])?,
        http.ok(
            Method::GET,
            &format!("/cubes/{s2}/cells/_/ocdfg?format=dot"),
            Vec::new(),
        )?,
    )?;

    // compare product X vs Y under Existence
    let pcube = ProcessCube::build(log.clone(), vec![product.clone()], Materialization::Existence)
        .map_err(|e| e.to_string())?;
    let pc = http.handle(
        Method::POST,
        &format!("/logs/{h}/cubes"),
        json!({"dims": ["item.product"], "mode": "existence"}),
    )?;
    let model = |v: &str| -> Result<ocpc_core::Ocdfg, String> {
        let coord: Coordinate = [(product.clone(), DimValue::from(v))].into_iter().collect();
        Ok(discover_ocdfg(
            &pcube.materialize_cell(&coord).map_err(|e| e.to_string())?,
        ))
    };
    let diff = compare_models(&model("X")?, &model("Y")?);
    let mut files = Vec::new();
    for v in ["X", "Y"] {
        let f = tmp.path().join(format!("{v}.jsonocel")).to_string_lossy().into_owned();
        cli(&[
            "slice",
            &path_s,
            "--dims",
            "item.product",
            "--mode",
            "existence",
            "--at",
            &format!("item.product={v}"),
            "-o",
            &f,
        ])?;
        files.push(f);
    }
    let body = json!({"left": {"cube": pc, "coord": {"item.product": "X"}}, "right": {"cube": pc, "coord": {"item.product": "Y"}}});
    agree(
        "compare",
        rj::to_bytes(&rj::diff(&diff)),
        cli(&["compare", &files[0], &files[1], "--out", "json"])?,
        http.ok(Method::POST, "/compare", body.to_string().into_bytes())?,
    )?;

    // export of a cell in both formats
    let x = utf8_percent_encode("item.product=X", NON_ALPHANUMERIC).to_string();
    let xcoord: Coordinate = [(product.clone(), DimValue::from("X"))].into_iter().collect();
    let xlog = pcube.materialize_cell(&xcoord).map_err(|e| e.to_string())?;
    agree(
        "export json",
        export_jsonocel(&xlog),
        std::fs::read(&files[0]).map_err(|e| e.to_string())?,
        http.ok(Method::GET, &format!("/cubes/{pc}/cells/{x}/log"), Vec::new())?,
    )?;
    agree(
        "export xml",
        export_xmlocel(&xlog).map_err(|e| e.to_string())?,
        cli(&["export", &files[0], "--to", "xml"])?,
        http.ok(
            Method::GET,
            &format!("/cubes/{pc}/cells/{x}/log?format=xml"),
            Vec::new(),
        )?,
    )?;
    Ok(format!(
        "byte-identical across library, CLI and HTTP: {}",
        steps.join(", ")
    ))
}

// ---------------------------------------------------------------- runner

fn run(name: &str, results: &mut Vec<bool>, f: impl FnOnce() -> Outcome) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| (*s).to_owned()))
            .unwrap_or_else(|| "panicked".into()))
    });
    let took = Duration::from_secs_f64(start.elapsed().as_secs_f64());
    match outcome {
        Ok(detail) => {
            println!("PASS  {name}: {detail} [{took:.1?}]");
            results.push(true);
        }
        Err(why) => {
            println!("FAIL  {name}: {why} [{took:.1?}]");
            results.push(false);
        }
    }
}

fn main() {
    let mut results = Vec::new();
    let logs = generated_logs();
    run("materialization oracle", &mut results, || materialization_oracle(&logs));
    run("existence/all semantics anchors", &mut results, semantics_anchors);
    run("partition and subset laws", &mut results, || {
        partition_and_subset(&logs)
    });
    run("oc-dfg identities", &mut results, || dfg_identities(&logs));
    run("json/xml round trip", &mut results, round_trip);
    run("build time linear in events", &mut results, scaling_events);
    run(
        "build time monotone in object attributes",
        &mut results,
        scaling_object_attrs,
    );
    run("library/cli/http agreement", &mut results, surface_agreement);
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
