use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use serde_json::json;

use rinehart_core::derham::de_rham_cohomology;
use rinehart_core::envelope::{cobar_truncated_cohomology, hkr_check, koszul_checks, reduced_koszul_differential, CobarSide};
use rinehart_core::lierinehart::algebra::display_derivation;
use rinehart_core::lierinehart::{annihilating_derivations, ce_cohomology, connection_flatness, log_derivations, lr_check_axioms};
use rinehart_core::polyring::poly_parse;
use rinehart_core::wedge::binomial;
use rinehart_core::{CohomologyReport, Error, MonomialOrder};

use crate::report::Report;
use crate::spec::{infer_vars, RingSpec, SpecFile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Gb,
    Derham,
    Logder,
    LrCohomology,
    Check,
    Koszul,
    Hkr,
    DualHkr,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Gb => "gb",
            Command::Derham => "derham",
            Command::Logder => "logder",
            Command::LrCohomology => "lr-cohomology",
            Command::Check => "check",
            Command::Koszul => "koszul",
            Command::Hkr => "hkr",
            Command::DualHkr => "dual-hkr",
        }
    }
}

/// Command-line overrides applied on top of the spec's options.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub d_max: Option<i64>,
    pub window: Option<i64>,
    pub order: Option<usize>,
    pub divisor: Option<String>,
}

pub fn prepare_spec(spec: Option<SpecFile>, ov: &Overrides) -> Result<SpecFile> {
    let mut spec = match (spec, &ov.divisor) {
        (Some(s), _) => s,
        (None, Some(f)) => SpecFile { ring: RingSpec { vars: infer_vars(f), ideal: Vec::new() }, ..Default::default() },
        (None, None) => bail!("a spec file (or --f for logder) is required"),
    };
    if let Some(f) = &ov.divisor {
        spec.divisor = Some(f.clone());
    }
    if let Some(d) = ov.d_max {
        spec.options.d_max = d;
    }
    if let Some(w) = ov.window {
        spec.options.window = w;
    }
    if let Some(n) = ov.order {
        spec.options.order = n;
    }
    Ok(spec)
}

fn cohomology_into(report: &mut Report, c: &CohomologyReport) -> Result<()> {
    report.dims = Some(c.dims.clone());
    report.stabilized = Some(c.stabilized.clone());
    report.representatives = Some(c.representatives.clone());
    report.warnings.extend(c.warnings.iter().cloned());
    report.result = json!({ "d_max": c.d_max, "window": c.window, "evidence": serde_json::to_value(&c.evidence)? });
    Ok(())
}

pub fn run(command: Command, spec: SpecFile) -> Result<Report> {
    let start = Instant::now();
    let mut report = Report::new(command.name(), spec.clone());
    let opts = &spec.options;
    match command {
        Command::Gb => {
            let ring = spec.ring()?;
            let gb = ring.gb();
            report.passed = gb.verify_s_pairs() && gb.verify_reduced();
            let basis: Vec<String> = gb.generators().iter().map(|g| ring.display(g)).collect();
            report.result = json!({ "order": "grevlex", "basis": basis, "trivial": ring.is_trivial() });
        }
        Command::Derham => {
            let ring = spec.ring()?;
            let c = de_rham_cohomology(&ring, opts.d_max, opts.window)?;
            cohomology_into(&mut report, &c)?;
        }
        Command::LrCohomology => {
            let l = spec.algebra()?;
            let e = spec.module(&l)?;
            let c = ce_cohomology(&l, &e, opts.d_max, opts.window)?;
            cohomology_into(&mut report, &c)?;
        }
        Command::Logder => logder(&spec, &mut report)?,
        Command::Check => {
            let l = spec.algebra()?;
            let axioms = lr_check_axioms(&l);
            let mut passed = axioms.passed();
            let mut result = json!({ "axioms": serde_json::to_value(&axioms)? });
            if spec.coefficients.is_some() {
                let e = spec.module(&l)?;
                let flat = connection_flatness(&l, &e);
                passed &= flat.flat && flat.ideal_preserved;
                result["connection"] = serde_json::to_value(&flat)?;
            }
            report.passed = passed;
            report.result = result;
        }
        Command::Koszul => {
            let l = spec.algebra()?;
            let k = koszul_checks(&l, opts.order)?;
            report.passed = k.passed();
            if !k.faithful {
                report.warnings.push(format!("order {} is below the rank {}; exactness is not asserted", opts.order, l.rank()));
            }
            report.result = serde_json::to_value(&k)?;
        }
        Command::Hkr => {
            let l = spec.algebra()?;
            let mut reduced_zero = true;
            for p in 1..=l.rank() {
                let m = reduced_koszul_differential(&l, p)?;
                reduced_zero &= m.iter().flatten().all(|f| f.is_zero());
            }
            let h = hkr_check(&l, opts.order.min(3))?;
            let k = koszul_checks(&l, opts.order)?;
            report.passed = reduced_zero && h.passed() && k.d_squared_zero;
            report.result = json!({
                "reduced_koszul_zero": reduced_zero,
                "projection_inverts_alt": h.projection_inverts_alt,
                "theta_coalgebra": h.theta_coalgebra,
                "checked_order": h.checked_order,
                "d_squared_zero": k.d_squared_zero,
                "witness": h.witness.or(k.witness),
            });
        }
        Command::DualHkr => dual_hkr(&spec, &mut report)?,
    }
    report.timing_ms = start.elapsed().as_secs_f64() * 1000.0;
    Ok(report)
}

fn logder(spec: &SpecFile, report: &mut Report) -> Result<()> {
    let Some(f) = &spec.divisor else {
        bail!("logder needs --f or a `divisor` entry in the spec");
    };
    let vars = &spec.ring.vars;
    let f = poly_parse(f, vars, MonomialOrder::Grevlex).with_context(|| format!("cannot parse divisor `{f}`"))?;
    let annihilating: Vec<String> = annihilating_derivations(&f)?.iter().map(|d| display_derivation(vars, d)).collect();
    match log_derivations(&f, vars) {
        Ok(lg) => {
            let s = lg.summary();
            report.result = json!({
                "rank": s.rank,
                "basis": s.basis,
                "saito": s.saito,
                "determinant": s.determinant,
                "annihilating": annihilating,
            });
        }
        Err(Error::NotCertifiedFree { generators }) => {
            report.passed = false;
            report.result = json!({ "saito": false, "generators": generators, "annihilating": annihilating });
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn dual_hkr(spec: &SpecFile, report: &mut Report) -> Result<()> {
    let opts = &spec.options;
    let l = spec.algebra()?;
    let jets = cobar_truncated_cohomology(&l, CobarSide::Jets, opts.order, opts.tensor_degree_max)?;
    let env = cobar_truncated_cohomology(&l, CobarSide::Enveloping, opts.order, opts.tensor_degree_max)?;
    let ce = ce_cohomology(&l, &rinehart_core::LRModule::trivial(&l), opts.d_max, opts.window)?;
    let ce_dim = |k: usize| ce.dims.get(k).copied().unwrap_or(0);
    let ring_dim = l.base().finite_basis().map_or(0, |b| b.len());
    let mut mismatches = Vec::new();
    for k in 0..jets.dims.len() {
        if !jets.stabilized[k] {
            continue;
        }
        if jets.dims[k] != ce_dim(k) {
            mismatches.push(format!("jets H^{k} = {} but CE gives {}", jets.dims[k], ce_dim(k)));
        }
        let wedge = binomial(l.rank(), k) * ring_dim;
        if env.dims[k] != wedge {
            mismatches.push(format!("enveloping H^{k} = {} but the exterior algebra gives {wedge}", env.dims[k]));
        }
    }
    report.passed = mismatches.is_empty();
    report.dims = Some(jets.dims.clone());
    report.stabilized = Some(jets.stabilized.clone());
    report.representatives = Some(jets.representatives.clone());
    report.warnings.extend(jets.warnings.iter().cloned());
    report.result = json!({
        "jet_cobar_dims": jets.dims,
        "enveloping_cobar_dims": env.dims,
        "ce_dims": ce.dims,
        "mismatches": mismatches,
    });
    Ok(())
}
