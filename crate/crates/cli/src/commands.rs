//! One function per subcommand, each returning its report.

use std::io::Write;

use anyhow::Result;
use ewalk_core::comfort::{average_comfortability, comfortability, limit_comfortability};
use ewalk_core::cover::{BlowUpGraph, DoubleCover};
use ewalk_core::enumerate::{enumerate_embeddings, rank_by_comfortability, EmbeddingClass};
use ewalk_core::format;
use ewalk_core::graph::SymmetricDigraph;
use ewalk_core::par::Execution;
use ewalk_core::rotation::RotationSystem;
use ewalk_core::scattering::{orientability_from_scattering, scattering_matrix, stationary_closed_form};
use ewalk_core::walk::{run_to_stationary, Coin, C64};
use serde::Serialize;

use crate::input::Inflow;
use crate::report::*;

fn euler_characteristic(rs: &RotationSystem, faces: usize) -> i64 {
    let g = rs.graph();
    g.vertex_count() as i64 - g.edge_count() as i64 + faces as i64
}

pub fn faces(rs: &RotationSystem) -> Result<FacesReport> {
    let fd = rs.trace_faces();
    let surface = rs.euler_genus()?;
    let g = rs.graph();
    Ok(FacesReport {
        system: format::write(rs),
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        euler_characteristic: euler_characteristic(rs, fd.faces.len()),
        orientable: surface.is_orientable(),
        surface: surface.into(),
        lengths: fd.length_multiset(),
        faces: fd.faces.iter().map(|f| FaceReport::new(rs, f)).collect(),
    })
}

pub fn genus(rs: &RotationSystem) -> Result<GenusReport> {
    let faces = rs.trace_faces().faces.len();
    let g = rs.graph();
    Ok(GenusReport {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        faces,
        euler_characteristic: euler_characteristic(rs, faces),
        surface: rs.euler_genus()?.into(),
    })
}

pub fn orientable(rs: &RotationSystem, coin: &Coin) -> Result<OrientableReport> {
    let (spanning_tree, _) = rs.detect_orientability()?;
    let double_cover = DoubleCover::new(rs)?.component_count() == 2;
    let scattering = if coin.a.im == 0.0 && coin.a.re > 0.0 && coin.d.im == 0.0 {
        let bg = BlowUpGraph::hedgehog(rs)?;
        let s = scattering_matrix(&bg, coin)?;
        Some(orientability_from_scattering(&s, &bg, coin)?)
    } else {
        None
    };
    Ok(OrientableReport {
        orientable: spanning_tree,
        spanning_tree,
        double_cover,
        scattering,
    })
}

pub fn scatter(rs: &RotationSystem, coin: &Coin) -> Result<ScatterReport> {
    let bg = BlowUpGraph::hedgehog(rs)?;
    let s = scattering_matrix(&bg, coin)?;
    let g = rs.graph();
    let tails = (0..bg.vertex_count())
        .map(|t| {
            let flag = bg.cover().project(t);
            TailLabel {
                tail: t,
                arc: [g.origin(flag.arc), g.terminus(flag.arc)],
                sheet: flag.sheet,
            }
        })
        .collect();
    let blocks = s
        .blocks
        .iter()
        .map(|b| {
            let face = &bg.cover_faces()[b.face];
            BlockReport {
                face: face.base_face,
                chiral: face.chiral,
                tails: b.tails.clone(),
                matrix: (0..b.matrix.nrows())
                    .map(|i| (0..b.matrix.ncols()).map(|j| Cx(b.matrix[(i, j)])).collect())
                    .collect(),
            }
        })
        .collect();
    Ok(ScatterReport {
        coin: coin.into(),
        dim: s.dim(),
        unitarity_defect: s.unitarity_defect(),
        tails,
        blocks,
    })
}

/// A single inflow gives `E`; `uniform` gives the average `E[E]` over
/// single-tail inflows.
pub fn comfort(rs: &RotationSystem, coin: &Coin, inflow: Inflow, limit: bool) -> Result<ComfortReport> {
    let bg = BlowUpGraph::hedgehog(rs)?;
    let (single, average) = match inflow {
        Inflow::Uniform => {
            let avg = average_comfortability(&bg, coin)?;
            let faces = avg
                .faces
                .iter()
                .map(|t| FaceTermReport {
                    face: t.face,
                    length: t.length,
                    self_intersections: t.self_intersections,
                    length_term: t.length_term,
                    self_term: t.self_term,
                })
                .collect();
            let report = AverageReport {
                value: avg.value,
                per_tail_mean: avg.per_tail_mean,
                trace_form: avg.trace_form,
                face_form: avg.face_form,
                positive_form: avg.positive_form,
                faces,
            };
            (None, Some(report))
        }
        _ => {
            let s = scattering_matrix(&bg, coin)?;
            let e = comfortability(&bg, &s, coin, &inflow.vector(bg.vertex_count())?)?;
            let split = ComfortSplit {
                total: e.total,
                island: e.island,
                bridge: e.bridge,
            };
            (Some(split), None)
        }
    };
    Ok(ComfortReport {
        coin: coin.into(),
        inflow: inflow.to_string(),
        comfort: single,
        average,
        limit: limit.then(|| limit_comfortability(&rs.trace_faces(), rs.graph().edge_count())),
    })
}

fn max_gap(x: &[C64], y: &[C64]) -> f64 {
    x.iter().zip(y).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max)
}

pub fn simulate(rs: &RotationSystem, coin: &Coin, inflow: Inflow, tol: f64, max_steps: usize) -> Result<SimulateReport> {
    let bg = BlowUpGraph::hedgehog(rs)?;
    let alpha = inflow.vector(bg.vertex_count())?;
    let run = run_to_stationary(&bg, coin, alpha.clone(), tol, max_steps)?;
    let st = &run.state;
    let comfort = st.internal_norm_sqr() / 2.0;
    let comparison = scattering_matrix(&bg, coin).ok().and_then(|s| {
        let closed = stationary_closed_form(&bg, coin, &alpha).ok()?;
        let e = comfortability(&bg, &s, coin, &alpha).ok()?;
        Some(Comparison {
            outflow_vs_scattering: max_gap(&st.outflow, &s.apply(&alpha)),
            state_vs_closed_form: max_gap(&st.minus, &closed.minus)
                .max(max_gap(&st.plus, &closed.plus))
                .max(max_gap(&st.bridge, &closed.bridge)),
            comfort_vs_formula: (e.total - comfort).abs(),
        })
    });
    Ok(SimulateReport {
        coin: coin.into(),
        inflow: inflow.to_string(),
        steps: run.steps,
        residual: run.residual,
        minus: cx(&st.minus),
        plus: cx(&st.plus),
        bridge: cx(&st.bridge),
        outflow: cx(&st.outflow),
        comfort,
        comparison,
    })
}

/// Classes of `g` with `E[E]` at each `a` under the real coin family,
/// sorted by `E[E]` at `rank_at` when given.
pub fn enumerate(g: &SymmetricDigraph, budget: u128, a: &[f64], rank_at: Option<f64>, exec: Execution) -> Result<EnumerateReport> {
    let mut a = a.to_vec();
    if let Some(r) = rank_at {
        if !a.contains(&r) {
            a.push(r);
        }
    }
    let coins = a.iter().map(|&x| Coin::real(x)).collect::<ewalk_core::Result<Vec<_>>>()?;
    let classes = enumerate_embeddings(g, budget, exec)?;
    let values = exec
        .map(&classes, |c| {
            let bg = BlowUpGraph::hedgehog(&c.representative)?;
            coins
                .iter()
                .map(|coin| average_comfortability(&bg, coin).map(|r| r.value))
                .collect::<ewalk_core::Result<Vec<f64>>>()
        })
        .into_iter()
        .collect::<ewalk_core::Result<Vec<_>>>()?;
    let row = |i: usize, c: &EmbeddingClass| ClassRow {
        class: i,
        index: c.index,
        orbit_size: c.orbit_size,
        orientable: c.surface.is_orientable(),
        genus: c.surface.genus(),
        surface: c.surface.to_string(),
        faces: c.face_lengths.clone(),
        self_intersections: c.self_intersections.clone(),
        comfort: values[i].clone(),
        limit: c.limit,
        rank: None,
        tie_group: None,
    };
    let rows = match rank_at {
        Some(r) => {
            let ranking = rank_by_comfortability(&classes, &Coin::real(r)?, exec)?;
            ranking
                .rows
                .iter()
                .enumerate()
                .map(|(pos, rr)| ClassRow {
                    rank: Some(pos + 1),
                    tie_group: Some(rr.tie_group),
                    ..row(rr.class, &classes[rr.class])
                })
                .collect()
        }
        None => classes.iter().enumerate().map(|(i, c)| row(i, c)).collect(),
    };
    Ok(EnumerateReport {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        a,
        ranked_at: rank_at,
        rows,
    })
}

pub fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn write_enumerate_csv(out: &mut dyn Write, r: &EnumerateReport) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> = ["class", "index", "orbit_size", "orientable", "genus", "surface", "faces", "self_intersections"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    header.extend(r.a.iter().map(|a| format!("E[a={a}]")));
    header.extend(["limit", "rank", "tie_group"].iter().map(|s| s.to_string()));
    w.write_record(&header)?;
    for row in &r.rows {
        let mut rec = vec![
            row.class.to_string(),
            row.index.to_string(),
            row.orbit_size.to_string(),
            row.orientable.to_string(),
            row.genus.to_string(),
            row.surface.clone(),
            join(&row.faces),
            join(&row.self_intersections),
        ];
        rec.extend(row.comfort.iter().map(f64::to_string));
        rec.extend([row.limit.to_string(), opt(row.rank), opt(row.tie_group)]);
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

/// Long format: one row per block entry, two columns for the value.
pub fn write_scatter_csv(out: &mut dyn Write, r: &ScatterReport) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["face", "chiral", "row", "col", "row_tail", "col_tail", "re", "im"])?;
    for b in &r.blocks {
        for (i, line) in b.matrix.iter().enumerate() {
            for (j, z) in line.iter().enumerate() {
                w.write_record([
                    b.face.to_string(),
                    b.chiral.to_string(),
                    i.to_string(),
                    j.to_string(),
                    b.tails[i].to_string(),
                    b.tails[j].to_string(),
                    z.0.re.to_string(),
                    z.0.im.to_string(),
                ])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_simulate_csv(out: &mut dyn Write, r: &SimulateReport) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "vertex", "minus_re", "minus_im", "plus_re", "plus_im", "bridge_re", "bridge_im", "outflow_re", "outflow_im",
    ])?;
    for v in 0..r.minus.len() {
        let mut rec = vec![v.to_string()];
        for z in [r.minus[v], r.plus[v], r.bridge[v], r.outflow[v]] {
            rec.push(z.0.re.to_string());
            rec.push(z.0.im.to_string());
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}
