//! Fixed-format text artifacts. Every number is printed with an explicit
//! width/precision so output is byte-reproducible across runs.

use moledrill_core::caster::{CasterBalance, RisePoint};
use moledrill_core::cycle::DigTimeline;
use moledrill_core::drilling::OperatingPoint;
use moledrill_core::forelimb::{ForelimbSpec, PullForces};
use moledrill_core::optimizer::ValidationReport;

pub const SWEEP_CSV_HEADER: &str = "wob_n,torque_nm,rpm,r,rop_m_hr,e_s_pa";

pub fn sweep_csv(grid: &[OperatingPoint]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for op in grid {
        out.push_str(&format!(
            "{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}\n",
            op.wob, op.torque, op.rpm, op.r_value, op.rop, op.e_s
        ));
    }
    out
}

pub fn validation_table(report: &ValidationReport) -> String {
    let mut out = String::new();
    out.push_str(
        "label       wob_n   rop_meas_m_hr  rop_model_m_hr  rel_error  e_s_meas_mpa  e_s_fc_mpa  e_s_an_mpa  excluded\n",
    );
    for row in &report.rows {
        out.push_str(&format!(
            "{:<8} {:>8.3}  {:>14.6}  {:>14.6}  {:>+9.4}  {:>12.4}  {:>10.4}  {:>10.4}  {}\n",
            row.label,
            row.wob,
            row.measured_rop,
            row.model_rop,
            row.rel_error,
            row.measured_e_s_reported / 1e6,
            row.model_e_s_fullcircle / 1e6,
            row.model_e_s_annulus / 1e6,
            if row.excluded { "yes" } else { "no" },
        ));
    }
    out.push_str(&format!(
        "s_cal = {:.6}  max_rel_error(included) = {:.4}  spearman(e_s, wob) = {:.3}\n",
        report.summary.s_cal, report.summary.max_rel_error_included, report.summary.spearman_e_s,
    ));
    out
}

pub fn validation_csv(report: &ValidationReport) -> String {
    let mut out = String::from(
        "label,wob_n,rop_meas_m_hr,rop_model_m_hr,rel_error,e_s_meas_pa,e_s_model_fullcircle_pa,e_s_model_annulus_pa,excluded\n",
    );
    for row in &report.rows {
        out.push_str(&format!(
            "{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{}\n",
            row.label,
            row.wob,
            row.measured_rop,
            row.model_rop,
            row.rel_error,
            row.measured_e_s_reported,
            row.model_e_s_fullcircle,
            row.model_e_s_annulus,
            row.excluded,
        ));
    }
    out
}

pub fn timeline_csv(timeline: &DigTimeline) -> String {
    let mut out = String::from("phase,start_s,duration_s,depth_after_m,debris_removed_n\n");
    for entry in &timeline.entries {
        out.push_str(&format!(
            "{},{:.6},{:.6},{:.6},{:.6}\n",
            entry.phase.index(),
            entry.start_s,
            entry.duration_s,
            entry.depth_after_m,
            entry.debris_removed_n,
        ));
    }
    out
}

pub fn rise_csv(curve: &[RisePoint]) -> String {
    let mut out = String::from("t_s,f_c_n,sigma_t_nm\n");
    for point in curve {
        out.push_str(&format!(
            "{:.6},{:.6},{:.9}\n",
            point.t_s, point.f_c_n, point.sigma_t_nm
        ));
    }
    out
}

pub fn caster_table(balance: &CasterBalance) -> String {
    let mut out = String::new();
    out.push_str(&format!("f_sp    = {:.6} N\n", balance.f_sp));
    out.push_str(&format!("p_t     = {:.6} mm\n", balance.p_t));
    out.push_str(&format!("t_sat   = {:.6} N·m\n", balance.t_sat));
    out.push_str(&format!("t_ss    = {:.6} N·m\n", balance.t_ss));
    out.push_str(&format!("sigma_t = {:.6} N·m\n", balance.sigma_t));
    let tie = if balance.boundary {
        ", boundary tie"
    } else {
        ""
    };
    out.push_str(&format!(
        "aligns: {} (ΣT = {:.4} N·m{})\n",
        balance.aligns, balance.sigma_t, tie
    ));
    out
}

pub struct ForelimbFitRow {
    pub d: f64,
    pub alpha: f64,
    pub f_meas: f64,
    pub f_model: f64,
    pub rel_error: f64,
}

pub fn forelimb_table(
    spec: &ForelimbSpec,
    rows: &[ForelimbFitRow],
    pull: &PullForces,
    max_rel_error: f64,
) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "k_trans = {:.6} (fit over {} rows, f_m = {:.1} N)\n",
        spec.k_trans,
        rows.len(),
        spec.f_m
    ));
    out.push_str("d_mm   alpha_deg   f_meas_n  f_model_n  rel_error\n");
    for row in rows {
        out.push_str(&format!(
            "{:<6.0} {:>9.1}  {:>9.2}  {:>9.3}  {:>+9.4}\n",
            row.d, row.alpha, row.f_meas, row.f_model, row.rel_error
        ));
    }
    out.push_str(&format!("max |rel_error| = {max_rel_error:.4}\n"));
    out.push_str(&format!(
        "pull: servo = {:.1} N, linear = {:.1} N (servo > linear: {})\n",
        pull.servo,
        pull.linear,
        pull.servo > pull.linear
    ));
    out
}

pub fn forelimb_csv(rows: &[ForelimbFitRow]) -> String {
    let mut out = String::from("d_mm,alpha_deg,f_meas_n,f_model_n,rel_error\n");
    for row in rows {
        out.push_str(&format!(
            "{:.2},{:.2},{:.2},{:.6},{:.6}\n",
            row.d, row.alpha, row.f_meas, row.f_model, row.rel_error
        ));
    }
    out
}
