//! Flat, ordered output records. The same key order is used for JSON
//! objects and CSV columns.

use std::time::Instant;

use cpshift_core::halfplane::{xi_halfplane, xi_halfplane_small_phi};
use cpshift_core::wire::{
    xi_plane_limit, xi_wire_asymptotic, xi_wire_exact, xi_wire_single_term,
};
use cpshift_core::{
    energy_shift, DipoleMeanSquares, Error, HalfplaneGeometry, WireGeometry, XiTriple,
};
use serde_json::{Map, Value};

use crate::args::Units;
use crate::config::Settings;

/// Beyond this d/R the single-order approximation is reported as well.
pub const SINGLE_TERM_FROM: f64 = 20.0;

pub type Record = Map<String, Value>;

pub fn num(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

fn push(rec: &mut Record, key: &str, v: Value) {
    rec.insert(key.to_string(), v);
}

fn push_triple(rec: &mut Record, prefix: &str, xi: Option<&XiTriple>, with_err: bool) {
    let names = ["rho", "phi", "z"];
    let vals = xi.map(|x| [x.xi_rho, x.xi_phi, x.xi_z]);
    for (i, n) in names.iter().enumerate() {
        push(rec, &format!("{prefix}{n}"), vals.map_or(Value::Null, |v| num(v[i])));
    }
    if with_err {
        let errs = xi.map(|x| [x.err_rho, x.err_phi, x.err_z]);
        let stem = prefix.trim_end_matches("xi_");
        for (i, n) in names.iter().enumerate() {
            push(rec, &format!("{stem}err_{n}"), errs.map_or(Value::Null, |v| num(v[i])));
        }
    }
}

fn push_dipole(rec: &mut Record, xi: Option<&XiTriple>, mu2: Option<&DipoleMeanSquares>, units: Units) {
    let mu = [mu2.map(|m| m.mu2_rho), mu2.map(|m| m.mu2_phi), mu2.map(|m| m.mu2_z)];
    for (n, v) in ["mu2_rho", "mu2_phi", "mu2_z"].iter().zip(mu) {
        push(rec, n, v.map_or(Value::Null, num));
    }
    let e = match (xi, mu2) {
        (Some(x), Some(m)) => Some(energy_shift(x, m, units.into())),
        _ => None,
    };
    push(rec, "energy", e.map_or(Value::Null, |e| num(e.value)));
    push(rec, "energy_err", e.map_or(Value::Null, |e| num(e.abs_error)));
}

fn push_tail(rec: &mut Record, settings: &Settings, started: Instant, error: Option<&Error>) {
    push(rec, "units", Value::String(units_name(settings.units).into()));
    push(rec, "fingerprint", Value::String(settings.fingerprint.clone()));
    if settings.timing {
        push(rec, "wall_time_s", num(started.elapsed().as_secs_f64()));
    }
    push(rec, "message", error.map_or(Value::Null, |e| Value::String(e.to_string())));
}

fn status(error: Option<&Error>) -> Value {
    Value::String(
        match error {
            None => "ok",
            Some(e) if e.is_non_convergence() => "non_convergence",
            Some(_) => "invalid_input",
        }
        .into(),
    )
}

fn units_name(u: Units) -> &'static str {
    match u {
        Units::Reduced => "reduced",
        Units::Rationalized => "rationalized",
        Units::Si => "si",
    }
}

/// Everything the wire command reports for one position. Failures of the
/// exact or asymptotic sums are returned as the error alongside whatever
/// else could be computed.
pub fn wire_record(
    geom: &WireGeometry,
    mu2: Option<&DipoleMeanSquares>,
    settings: &Settings,
) -> (Record, Option<Error>) {
    let started = Instant::now();
    let cfg = &settings.numerics;
    let d = geom.gap();
    let ratio = d / geom.radius();

    let exact = xi_wire_exact(geom, cfg);
    let asym = xi_wire_asymptotic(geom, cfg);
    let plane = xi_plane_limit(d).ok();
    let single = if ratio >= SINGLE_TERM_FROM {
        Some(xi_wire_single_term(geom, cfg))
    } else {
        None
    };
    let error = [exact.as_ref().err(), asym.as_ref().err(), single.as_ref().and_then(|s| s.as_ref().err())]
        .into_iter()
        .flatten()
        .next()
        .cloned();
    let exact = exact.ok();
    let asym = asym.ok();
    let single = single.and_then(|s| s.ok());

    let mut rec = Record::new();
    push(&mut rec, "d_over_R", num(ratio));
    push(&mut rec, "R", num(geom.radius()));
    push(&mut rec, "rho", num(geom.rho()));
    push(&mut rec, "d", num(d));
    push(&mut rec, "status", status(error.as_ref()));
    push_triple(&mut rec, "xi_", exact.as_ref(), true);
    push_triple(&mut rec, "d3xi_", exact.map(|x| x.dimensionless(d)).as_ref(), false);
    push_triple(&mut rec, "asym_xi_", asym.as_ref(), true);
    push_triple(&mut rec, "d3asym_xi_", asym.map(|x| x.dimensionless(d)).as_ref(), false);
    push_triple(&mut rec, "plane_xi_", plane.as_ref(), false);
    push_triple(&mut rec, "single_xi_", single.as_ref(), true);
    push_dipole(&mut rec, exact.as_ref(), mu2, settings.units);
    push_tail(&mut rec, settings, started, error.as_ref());
    (rec, error)
}

pub fn halfplane_record(
    geom: &HalfplaneGeometry,
    mu2: Option<&DipoleMeanSquares>,
    settings: &Settings,
) -> Record {
    let started = Instant::now();
    let exact = xi_halfplane(geom);
    let small = xi_halfplane_small_phi(geom);
    let rho = geom.rho();

    let mut rec = Record::new();
    push(&mut rec, "rho", num(rho));
    push(&mut rec, "phi", num(geom.phi()));
    push(&mut rec, "status", status(None));
    push_triple(&mut rec, "xi_", Some(&exact), true);
    push_triple(&mut rec, "rho3xi_", Some(&exact.dimensionless(rho)), false);
    push_triple(&mut rec, "small_xi_", Some(&small), false);
    push_triple(&mut rec, "rho3small_xi_", Some(&small.dimensionless(rho)), false);
    push_dipole(&mut rec, Some(&exact), mu2, settings.units);
    push_tail(&mut rec, settings, started, None);
    rec
}
