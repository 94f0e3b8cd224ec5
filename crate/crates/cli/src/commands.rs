//! Command implementations: profile tables, sweeps, and the figure bundles.

use std::path::{Path, PathBuf};

use anyhow::{bail, Result};
use helmsym::{
    even_ceil, ladder_exponents, profile, sweep_h_refinement, sweep_kh_fixed, sweep_ladder,
    GridSpec, KhFixedEntry, Scheme, SourceKind, SourceSpec, SweepRow, WaveNumber,
};
use serde_json::json;

use crate::output::{
    g17, profile_file_name, sweep_row_csv, sweep_row_json, write_atomic, OutputFormat,
    SWEEP_CSV_HEADER,
};

pub const PROFILE_CSV_HEADER: &str = "n,xi,psi_p,psi_pm1,kp_psi_p,kp_psi_pm1";

/// Canonical k family of the figures: n_k = 5 * 2^j, offset 1.
pub const FIGURE_NKS: [u32; 5] = [5, 10, 20, 40, 80];

/// Fixed kh used by the evanescent-mode figure.
pub const FIG3_KH: f64 = 0.5;

/// Ladder start for the profile figure, chosen so kh_0 ~ 0.5.
pub const FIG1_LADDER_N0: usize = 34;

/// N list of the h-refinement row of the profile figure (k = 5pi+1).
pub const FIG1_HREF_NS: [usize; 5] = [18, 36, 72, 144, 288];

fn k_of(nk: u32) -> WaveNumber {
    WaveNumber::new(nk, 1.0).expect("offset 1 is valid")
}

/// The error-vs-kh grid kh = 2^(-j/2), j = 0..14, spanning the declared
/// default range [2^-7, 1].
pub fn default_kh_grid() -> Vec<f64> {
    (0..15).map(|j| (2.0f64).powf(-(j as f64) / 2.0)).collect()
}

/// Even N values realizing the default kh grid for a given k, deduplicated.
pub fn kh_grid_n_list(k: WaveNumber) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for kh in default_kh_grid() {
        let n = even_ceil(k.value() / kh);
        if out.last() != Some(&n) {
            out.push(n);
        }
    }
    out
}

/// Write one symbol-error profile table; returns the file path.
pub fn cmd_profile(
    scheme: Scheme,
    k: WaveNumber,
    n: usize,
    p_override: Option<i32>,
    out_dir: &Path,
    format: OutputFormat,
) -> Result<PathBuf> {
    let grid = GridSpec::new(n)?;
    let p = p_override.unwrap_or(scheme.default_p());
    let prof_p = profile(scheme, k, grid, p)?;
    let prof_pm1 = profile(scheme, k, grid, p - 1)?;
    let kp = k.value().powi(p);

    let path = out_dir.join(profile_file_name(scheme, k, n, p, format));
    let mut body = String::new();
    match format {
        OutputFormat::Csv => {
            body.push_str(PROFILE_CSV_HEADER);
            body.push('\n');
            for (i, ((xi, vp), (_, vpm1))) in prof_p.values.iter().zip(&prof_pm1.values).enumerate()
            {
                body.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    i + 1,
                    g17(*xi),
                    g17(*vp),
                    g17(*vpm1),
                    g17(kp * vp),
                    g17(kp * vpm1)
                ));
            }
            body.push_str(&format!(
                "# max_psi_p={} argmax_n={} max_psi_pm1={} argmax_pm1_n={} scheme={} k={} N={} p={}\n",
                g17(prof_p.max_value),
                prof_p.argmax_n,
                g17(prof_pm1.max_value),
                prof_pm1.argmax_n,
                scheme,
                k.spec_string(),
                n,
                p
            ));
        }
        OutputFormat::JsonLines => {
            for (i, ((xi, vp), (_, vpm1))) in prof_p.values.iter().zip(&prof_pm1.values).enumerate()
            {
                body.push_str(
                    &json!({
                        "n": i + 1,
                        "xi": xi,
                        "psi_p": vp,
                        "psi_pm1": vpm1,
                        "kp_psi_p": kp * vp,
                        "kp_psi_pm1": kp * vpm1,
                    })
                    .to_string(),
                );
                body.push('\n');
            }
            body.push_str(
                &json!({
                    "summary": {
                        "max_psi_p": prof_p.max_value,
                        "argmax_n": prof_p.argmax_n,
                        "max_psi_pm1": prof_pm1.max_value,
                        "argmax_pm1_n": prof_pm1.argmax_n,
                        "scheme": scheme.to_string(),
                        "k": k.spec_string(),
                        "N": n,
                        "p": p,
                    }
                })
                .to_string(),
            );
            body.push('\n');
        }
    }
    write_atomic(&path, &body)?;
    Ok(path)
}

fn sweep_table(rows: &[SweepRow], format: OutputFormat, trailer: Option<String>) -> String {
    let mut body = String::new();
    match format {
        OutputFormat::Csv => {
            body.push_str(SWEEP_CSV_HEADER);
            body.push('\n');
            for r in rows {
                body.push_str(&sweep_row_csv(r));
                body.push('\n');
            }
            if let Some(t) = trailer {
                body.push_str(&t);
            }
        }
        OutputFormat::JsonLines => {
            for r in rows {
                body.push_str(&sweep_row_json(r));
                body.push('\n');
            }
            if let Some(t) = trailer {
                body.push_str(&t);
            }
        }
    }
    body
}

/// Rows form the k-doubling/N-quadrupling ladder shape.
fn is_ladder_shape(rows: &[SweepRow]) -> bool {
    rows.len() >= 3
        && rows.windows(2).all(|w| {
            w[1].n == 4 * w[0].n
                && w[0].k.pi_multiple() > 0
                && w[1].k.pi_multiple() == 2 * w[0].k.pi_multiple()
                && w[1].k.offset() == w[0].k.offset()
        })
}

fn alpha_trailer(rows: &[SweepRow], format: OutputFormat) -> Option<String> {
    if !is_ladder_shape(rows) {
        return None;
    }
    match ladder_exponents(rows) {
        Ok((l2, h1)) => Some(match format {
            OutputFormat::Csv => {
                format!("# alpha_l2={} alpha_h1={}\n", g17(l2.alpha), g17(h1.alpha))
            }
            OutputFormat::JsonLines => format!(
                "{}\n",
                json!({"alpha_l2": l2.alpha, "alpha_h1": h1.alpha,
                       "step_log2_ratios_l2": l2.step_log2_ratios})
            ),
        }),
        Err(e) => Some(match format {
            OutputFormat::Csv => format!("# alpha unavailable: {e}\n"),
            OutputFormat::JsonLines => format!("{}\n", json!({"alpha_unavailable": e.to_string()})),
        }),
    }
}

/// Run and write a ladder sweep; returns the file path.
#[allow(clippy::too_many_arguments)]
pub fn cmd_sweep_ladder(
    scheme: Scheme,
    k0: WaveNumber,
    n0: usize,
    steps: usize,
    source: SourceKind,
    p_override: Option<i32>,
    out_dir: &Path,
    format: OutputFormat,
) -> Result<PathBuf> {
    let p = p_override.unwrap_or(scheme.default_p());
    let rows = sweep_ladder(scheme, k0, n0, steps, source, p)?;
    let trailer = alpha_trailer(&rows, format);
    let src = match source {
        SourceKind::Monochromatic => "mono",
        SourceKind::Mixed => "mixed",
    };
    let path = out_dir.join(format!(
        "sweep_ladder_{scheme}_{}_N{n0}_s{steps}_{src}.{}",
        k0.spec_string(),
        format.extension()
    ));
    write_atomic(&path, &sweep_table(&rows, format, trailer))?;
    Ok(path)
}

/// Run and write an h-refinement sweep; returns the file path.
pub fn cmd_sweep_href(
    scheme: Scheme,
    k: WaveNumber,
    n_list: &[usize],
    source: SourceKind,
    p_override: Option<i32>,
    out_dir: &Path,
    format: OutputFormat,
) -> Result<PathBuf> {
    if n_list.is_empty() {
        bail!("--href needs a nonempty --N list");
    }
    let p = p_override.unwrap_or(scheme.default_p());
    let src = match source {
        SourceKind::Monochromatic => SourceSpec::monochromatic(k)?,
        SourceKind::Mixed => SourceSpec::mixed(),
    };
    let rows = sweep_h_refinement(scheme, k, n_list, &src, p)?;
    let path = out_dir.join(format!(
        "sweep_href_{scheme}_{}.{}",
        k.spec_string(),
        format.extension()
    ));
    write_atomic(&path, &sweep_table(&rows, format, None))?;
    Ok(path)
}

/// Run and write a fixed-kh family: a summary table plus one profile file per
/// k; returns all written paths (summary first).
pub fn cmd_sweep_khfixed(
    scheme: Scheme,
    kh: f64,
    ks: &[WaveNumber],
    p_override: Option<i32>,
    out_dir: &Path,
    format: OutputFormat,
) -> Result<Vec<PathBuf>> {
    if ks.is_empty() {
        bail!("--khfixed needs a nonempty --k list");
    }
    let entries = sweep_kh_fixed(scheme, kh, ks, p_override)?;
    let p = p_override.unwrap_or(scheme.default_p());

    let mut body = String::new();
    match format {
        OutputFormat::Csv => {
            body.push_str("scheme,k,N,kh,p,max_psi,argmax_n,evanescent_max,propagating_max\n");
            for e in &entries {
                body.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    scheme,
                    g17(e.k.value()),
                    e.n,
                    g17(e.kh),
                    p,
                    g17(e.profile.max_value),
                    e.profile.argmax_n,
                    g17(e.evanescent_max.unwrap_or(f64::NAN)),
                    g17(e.propagating_max.unwrap_or(f64::NAN)),
                ));
            }
        }
        OutputFormat::JsonLines => {
            for e in &entries {
                body.push_str(
                    &json!({
                        "scheme": scheme.to_string(),
                        "k": e.k.value(),
                        "N": e.n,
                        "kh": e.kh,
                        "p": p,
                        "max_psi": e.profile.max_value,
                        "argmax_n": e.profile.argmax_n,
                        "evanescent_max": e.evanescent_max,
                        "propagating_max": e.propagating_max,
                    })
                    .to_string(),
                );
                body.push('\n');
            }
        }
    }
    let summary = out_dir.join(format!(
        "sweep_khfixed_{scheme}_kh{kh}.{}",
        format.extension()
    ));
    write_atomic(&summary, &body)?;

    let mut paths = vec![summary];
    for e in &entries {
        paths.push(cmd_profile(scheme, e.k, e.n, p_override, out_dir, format)?);
    }
    Ok(paths)
}

// ---------------------------------------------------------------------------
// figure bundles

struct Panel {
    title: String,
    xlabel: &'static str,
    ylabel: String,
    xscale: &'static str,
    yscale: &'static str,
    series: Vec<(String, String, &'static str, &'static str)>, // (label, file, x, y)
}

fn plot_json(figure: u8, panels: &[Panel]) -> String {
    let panels: Vec<_> = panels
        .iter()
        .map(|p| {
            json!({
                "title": p.title,
                "xlabel": p.xlabel,
                "ylabel": p.ylabel,
                "xscale": p.xscale,
                "yscale": p.yscale,
                "series": p.series.iter().map(|(label, file, x, y)| json!({
                    "label": label, "file": file, "x": x, "y": y,
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    let doc = json!({ "figure": figure, "panels": panels });
    serde_json::to_string_pretty(&doc).expect("valid json") + "\n"
}

fn fig1(out: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    let mut panels = Vec::new();
    let k0 = k_of(5);

    // h-refinement row: classical scheme at fixed k
    let mut href_series_p = Vec::new();
    let mut href_series_pm1 = Vec::new();
    let mut scaling = String::from("N,h,max_psi_p,max_psi_pm1,kp_max_psi_p,kp_max_psi_pm1\n");
    for &n in &FIG1_HREF_NS {
        let path = cmd_profile(Scheme::Cls, k0, n, None, out, OutputFormat::Csv)?;
        let file = path.file_name().unwrap().to_string_lossy().into_owned();
        href_series_p.push((format!("N={n}"), file.clone(), "xi", "kp_psi_p"));
        href_series_pm1.push((format!("N={n}"), file, "xi", "kp_psi_pm1"));
        let grid = GridSpec::new(n)?;
        let prof_p = profile(Scheme::Cls, k0, grid, 0)?;
        let prof_pm1 = profile(Scheme::Cls, k0, grid, -1)?;
        scaling.push_str(&format!(
            "{n},{},{},{},{},{}\n",
            g17(grid.h()),
            g17(prof_p.max_value),
            g17(prof_pm1.max_value),
            g17(prof_p.max_value), // p = 0, so k^p = 1
            g17(prof_pm1.max_value)
        ));
        written.push(path);
    }
    let scaling_path = out.join("href_scaling_cls.csv");
    write_atomic(&scaling_path, &scaling)?;
    written.push(scaling_path);
    panels.push(Panel {
        title: "cls, h-refinement: L2 symbol error".into(),
        xlabel: "xi",
        ylabel: "psi_p".into(),
        xscale: "linear",
        yscale: "log",
        series: href_series_p,
    });
    panels.push(Panel {
        title: "cls, h-refinement: H1 symbol error".into(),
        xlabel: "xi",
        ylabel: "psi_pm1".into(),
        xscale: "linear",
        yscale: "log",
        series: href_series_pm1,
    });
    panels.push(Panel {
        title: "cls, h-refinement: max symbol errors".into(),
        xlabel: "N",
        ylabel: "max psi".into(),
        xscale: "log",
        yscale: "log",
        series: vec![
            (
                "L2".into(),
                "href_scaling_cls.csv".into(),
                "N",
                "kp_max_psi_p",
            ),
            (
                "H1".into(),
                "href_scaling_cls.csv".into(),
                "N",
                "kp_max_psi_pm1",
            ),
        ],
    });

    // ladder rows: every scheme, k doubling and N quadrupling
    for scheme in Scheme::ALL {
        let p = scheme.default_p();
        let kp_name_p = format!("k^{p} psi_{p}");
        let kp_name_pm1 = format!("k^{p} psi_{}", p - 1);
        let mut series_p = Vec::new();
        let mut series_pm1 = Vec::new();
        let mut scaling = String::from("step,k,N,kh,kp_max_psi_p,kp_max_psi_pm1\n");
        for (j, &nk) in FIGURE_NKS.iter().enumerate() {
            let k = k_of(nk);
            let n = FIG1_LADDER_N0 << (2 * j);
            let path = cmd_profile(scheme, k, n, None, out, OutputFormat::Csv)?;
            let file = path.file_name().unwrap().to_string_lossy().into_owned();
            series_p.push((
                format!("k={}", k.spec_string()),
                file.clone(),
                "xi",
                "kp_psi_p",
            ));
            series_pm1.push((format!("k={}", k.spec_string()), file, "xi", "kp_psi_pm1"));
            let grid = GridSpec::new(n)?;
            let prof_p = profile(scheme, k, grid, p)?;
            let prof_pm1 = profile(scheme, k, grid, p - 1)?;
            let kp = k.value().powi(p);
            scaling.push_str(&format!(
                "{j},{},{n},{},{},{}\n",
                g17(k.value()),
                g17(k.value() * grid.h()),
                g17(kp * prof_p.max_value),
                g17(kp * prof_pm1.max_value)
            ));
            written.push(path);
        }
        let scaling_path = out.join(format!("ladder_scaling_{scheme}.csv"));
        write_atomic(&scaling_path, &scaling)?;
        written.push(scaling_path);
        panels.push(Panel {
            title: format!("{scheme}, k-ladder: scaled L2 symbol error"),
            xlabel: "xi",
            ylabel: kp_name_p.clone(),
            xscale: "linear",
            yscale: "log",
            series: series_p,
        });
        panels.push(Panel {
            title: format!("{scheme}, k-ladder: scaled H1 symbol error"),
            xlabel: "xi",
            ylabel: kp_name_pm1.clone(),
            xscale: "linear",
            yscale: "log",
            series: series_pm1,
        });
        panels.push(Panel {
            title: format!("{scheme}, k-ladder: max scaled symbol errors"),
            xlabel: "step",
            ylabel: "k^p max psi".into(),
            xscale: "linear",
            yscale: "log",
            series: vec![
                (
                    "L2".into(),
                    format!("ladder_scaling_{scheme}.csv"),
                    "step",
                    "kp_max_psi_p",
                ),
                (
                    "H1".into(),
                    format!("ladder_scaling_{scheme}.csv"),
                    "step",
                    "kp_max_psi_pm1",
                ),
            ],
        });
    }

    let plot_path = out.join("plot.json");
    write_atomic(&plot_path, &plot_json(1, &panels))?;
    written.push(plot_path);
    Ok(written)
}

fn fig2(out: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    let mut panels = Vec::new();
    for scheme in Scheme::ALL {
        for (src_kind, src_name) in [
            (SourceKind::Monochromatic, "mono"),
            (SourceKind::Mixed, "mixed"),
        ] {
            let p = scheme.default_p();
            let mut rows: Vec<SweepRow> = Vec::new();
            for &nk in &FIGURE_NKS {
                let k = k_of(nk);
                let n_list: Vec<usize> = kh_grid_n_list(k)
                    .into_iter()
                    .filter(|&n| src_kind == SourceKind::Monochromatic || n > 160)
                    .collect();
                if n_list.is_empty() {
                    continue;
                }
                let src = match src_kind {
                    SourceKind::Monochromatic => SourceSpec::monochromatic(k)?,
                    SourceKind::Mixed => SourceSpec::mixed(),
                };
                rows.extend(sweep_h_refinement(scheme, k, &n_list, &src, p)?);
            }
            let file = format!("{src_name}_{scheme}.csv");
            let path = out.join(&file);
            write_atomic(&path, &sweep_table(&rows, OutputFormat::Csv, None))?;
            written.push(path);
            for (norm, col) in [("L2", "l2"), ("H1", "h1")] {
                panels.push(Panel {
                    title: format!("{scheme}, {src_name} source: {norm} error vs kh"),
                    xlabel: "kh",
                    ylabel: norm.to_string(),
                    xscale: "log",
                    yscale: "log",
                    series: vec![("per k".into(), file.clone(), "kh", col)],
                });
            }
        }
    }
    let plot_path = out.join("plot.json");
    write_atomic(&plot_path, &plot_json(2, &panels))?;
    written.push(plot_path);
    Ok(written)
}

fn fig3(out: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    let mut panels = Vec::new();
    let ks: Vec<WaveNumber> = FIGURE_NKS.iter().map(|&nk| k_of(nk)).collect();
    for scheme in Scheme::DISPERSION_FREE {
        let entries = sweep_kh_fixed(scheme, FIG3_KH, &ks, None)?;
        let mut series = Vec::new();
        let mut summary = String::from("k,N,kh,evanescent_max,propagating_max\n");
        for e in &entries {
            let path = cmd_profile(scheme, e.k, e.n, None, out, OutputFormat::Csv)?;
            let file = path.file_name().unwrap().to_string_lossy().into_owned();
            series.push((format!("k={}", e.k.spec_string()), file, "xi", "psi_p"));
            summary.push_str(&format!(
                "{},{},{},{},{}\n",
                g17(e.k.value()),
                e.n,
                g17(e.kh),
                g17(e.evanescent_max.unwrap_or(f64::NAN)),
                g17(e.propagating_max.unwrap_or(f64::NAN)),
            ));
            written.push(path.clone());
        }
        let summary_path = out.join(format!("evanescent_{scheme}.csv"));
        write_atomic(&summary_path, &summary)?;
        written.push(summary_path);
        panels.push(Panel {
            title: format!("{scheme}: symbol error at fixed kh = {FIG3_KH}"),
            xlabel: "xi",
            ylabel: "psi_p".into(),
            xscale: "linear",
            yscale: "log",
            series,
        });
    }
    let plot_path = out.join("plot.json");
    write_atomic(&plot_path, &plot_json(3, &panels))?;
    written.push(plot_path);
    Ok(written)
}

/// Write the canonical data bundle for one figure into out_dir/fig{N}/.
pub fn cmd_reproduce(figure: u8, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let sub = out_dir.join(format!("fig{figure}"));
    match figure {
        1 => fig1(&sub),
        2 => fig2(&sub),
        3 => fig3(&sub),
        other => bail!("unknown figure {other}; expected 1, 2 or 3"),
    }
}

/// Used in tests: the khfixed entries behind figure 3.
pub fn fig3_entries(scheme: Scheme) -> Result<Vec<KhFixedEntry>> {
    let ks: Vec<WaveNumber> = FIGURE_NKS.iter().map(|&nk| k_of(nk)).collect();
    Ok(sweep_kh_fixed(scheme, FIG3_KH, &ks, None)?)
}
