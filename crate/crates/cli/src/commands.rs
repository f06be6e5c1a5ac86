use serde_json::{json, Value};
use twind_core::induction::partial;
use twind_core::multiplets::{alternating_dimension_sum, gkrs_identity_check, multiplet};
use twind_core::spinc::{almost_complex_character, classify, euler_class_for_character, nu};
use twind_core::verify::{self, Suite};
use twind_core::weyl::{to_dominant_chamber, Chamber};
use twind_core::{ClassicalKind, Error, GroupElement, TwistClass};

use crate::context::{optional_problem, Context};
use crate::error::CliError;
use crate::problem::{EulerKind, InductionKind, ProblemDocument};

/// Largest relative error accepted by `lefschetz`.
pub const LEFSCHETZ_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_TRIALS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::Subcommand)]
pub enum Command {
    /// Root datum, subgroup and Weyl group diagnostics.
    Info,
    /// Minimal coset representatives W^H.
    Whset,
    /// Induce an H-character to G (twisted Spin^c, holomorphic, Spin or Spin^c).
    Induce,
    /// Restrict a G-module to H.
    Branch,
    /// Borel-Weil-Bott reduction of an irreducible H-module.
    Bwb,
    /// GKRS multiplet of a ρ_G-shifted torus element.
    Multiplet,
    /// Gram matrix and determinant of the duality pairing.
    Pairing,
    /// Invariant Spin and Spin^c structures on G/H.
    Spinc,
    /// Numeric fixed-point cross-check of an induction.
    Lefschetz,
    /// Run the identity suites over the built-in datum zoo.
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Info => "info",
            Command::Whset => "whset",
            Command::Induce => "induce",
            Command::Branch => "branch",
            Command::Bwb => "bwb",
            Command::Multiplet => "multiplet",
            Command::Pairing => "pairing",
            Command::Spinc => "spinc",
            Command::Lefschetz => "lefschetz",
            Command::Verify => "verify",
        }
    }
}

/// Result payload, diagnostics (absent for `verify`) and whether the
/// computation reports success.
pub struct Outcome {
    pub result: Value,
    pub diagnostics: Option<Value>,
    pub passed: bool,
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

pub fn execute(cmd: Command, doc: &ProblemDocument) -> Result<Outcome, CliError> {
    if cmd == Command::Verify {
        return run_verify(doc);
    }
    let ctx = Context::new(doc.clone())?;
    if cmd == Command::Info {
        let p = optional_problem(&ctx)?;
        return Ok(Outcome {
            result: info(&ctx),
            diagnostics: Some(ctx.diagnostics(p.as_ref())),
            passed: true,
        });
    }
    let p = ctx.problem()?;
    let diagnostics = Some(ctx.diagnostics(Some(&p)));
    let mut passed = true;
    let result = match cmd {
        Command::Whset => {
            let wg = p.weyl_big();
            let reps: Vec<Value> = p
                .coset_reps()
                .indices()
                .iter()
                .map(|&k| {
                    let w = wg.element(k);
                    json!({"index": k, "length": w.length(), "det": w.det(), "matrix": w.matrix()})
                })
                .collect();
            json!({"count": reps.len(), "representatives": reps})
        }
        Command::Induce => {
            let kind = doc.kind.unwrap_or(InductionKind::Twisted);
            if doc.input.is_none() && doc.weight.is_some() && kind == InductionKind::Twisted {
                let mu = ctx.require_weight("weight", &doc.weight)?;
                let source = GroupElement::irreducible(p.small(), &mu)?;
                let g = p.induce_group(&source)?;
                json!({"kind": kind, "source": source, "element": g, "dimension": g.dimension()?})
            } else {
                let a = ctx.input(
                    &p,
                    if kind == InductionKind::Twisted {
                        "unit"
                    } else {
                        "1"
                    },
                )?;
                let (g, gamma) = match kind {
                    InductionKind::Twisted => (p.induce_twisted_spinc(&a, true)?, None),
                    InductionKind::Holomorphic => {
                        (p.induce_classical(&ClassicalKind::Holomorphic, &a)?, None)
                    }
                    InductionKind::Spin => (p.induce_classical(&ClassicalKind::Spin, &a)?, None),
                    InductionKind::Spinc => {
                        let gamma = match &doc.gamma {
                            Some(g) => g.clone(),
                            None => classify(&p)?.gamma.ok_or(Error::NotCSpinorial)?,
                        };
                        (
                            p.induce_classical(&ClassicalKind::SpincWith(gamma.clone()), &a)?,
                            Some(gamma),
                        )
                    }
                };
                let mut out =
                    json!({"kind": kind, "input": a, "element": g, "dimension": g.dimension()?});
                if let Some(gamma) = gamma {
                    out["gamma"] = json!(gamma);
                }
                out
            }
        }
        Command::Branch => {
            let source = if let Some(spec) = &doc.weight {
                GroupElement::irreducible(p.big(), &ctx.weight(spec, "/weight")?)?
            } else if doc.input.is_some() {
                let a = ctx.input(&p, "1")?;
                let g = partial(p.big(), &a.shift_by(p.big().rho_own()))?;
                if g.expand()? != a {
                    return Err(CliError::NotInvariant);
                }
                g
            } else {
                return Err(CliError::Schema {
                    pointer: "/weight".into(),
                    message: "missing field (or give /input)".into(),
                });
            };
            let r = p.branch(&source)?;
            json!({"source": source, "restriction": r, "dimension": r.dimension()?})
        }
        Command::Bwb => {
            let mu = ctx.require_weight("weight", &doc.weight)?;
            let g = p.bwb_irreducible(&mu)?;
            let shifted = &mu + p.small().rho_own();
            let chamber = match to_dominant_chamber(p.big(), &shifted) {
                Chamber::Singular => json!({"regular": false}),
                Chamber::Regular { w, image } => {
                    json!({"regular": true, "length": w.length(), "det": w.det(), "image": image})
                }
            };
            let direct = p.induce_group(&GroupElement::irreducible(p.small(), &mu)?)?;
            passed = direct == g;
            json!({
                "weight": mu,
                "shifted": shifted,
                "chamber": chamber,
                "element": g,
                "agrees_with_induction": passed,
            })
        }
        Command::Multiplet => {
            let a = ctx.input(&p, "e^rhoG")?;
            let m = multiplet(&p, &a)?;
            let gkrs = gkrs_identity_check(&p, &a)?;
            passed = gkrs;
            json!({
                "multiplet": m,
                "signed_dimensions": m.signed_dimensions()?,
                "alternating_sum": alternating_dimension_sum(&m)?,
                "gkrs_identity": gkrs,
            })
        }
        Command::Pairing => {
            let tau = match &doc.tau {
                Some(spec) => TwistClass::of(&ctx.weight(spec, "/tau")?),
                None => TwistClass::zero(ctx.datum.rank()),
            };
            let (a, b) = p.steinberg_pairing_bases(&tau)?;
            to_value(&p.pairing_report(&tau, &a, &b)?)
        }
        Command::Spinc => {
            let c = classify(&p)?;
            let mut out = json!({"classification": c});
            let gamma = doc.gamma.clone().or(c.gamma.clone());
            if let Some(g) = &gamma {
                let v = nu(&p, g)?;
                out["gamma"] = json!(g);
                out["nu"] = json!(v);
                out["c_spinorial"] = json!(v.is_integral());
                if v.is_integral() {
                    out["euler_class"] = to_value(&euler_class_for_character(&p, g)?);
                }
            }
            if let Some(signs) = &doc.signs {
                let chi = almost_complex_character(&p, signs)?;
                let entry = match chi.as_integral().map(|x| nu(&p, x)) {
                    Some(Ok(v)) => {
                        json!({"character": chi, "in_x_h": true, "nu": v, "c_spinorial": v.is_integral()})
                    }
                    Some(Err(Error::NotInXH)) | None => json!({"character": chi, "in_x_h": false}),
                    Some(Err(e)) => return Err(e.into()),
                };
                out["almost_complex"] = entry;
            }
            out
        }
        Command::Lefschetz => {
            let euler = doc.euler.unwrap_or(EulerKind::Dirac);
            let (e, default) = match euler {
                EulerKind::Dirac => (p.euler_class().clone(), "unit"),
                EulerKind::Hdr => (p.hodge_de_rham_euler(), "1"),
            };
            let a = ctx.input(&p, default)?;
            let trials = doc.trials.unwrap_or(DEFAULT_TRIALS);
            let r = p.lefschetz_check(&e, &a, trials, doc.seed)?;
            passed = r.max_relative_error <= LEFSCHETZ_TOLERANCE;
            json!({"euler": euler, "input": a, "tolerance": LEFSCHETZ_TOLERANCE, "passed": passed, "report": r})
        }
        Command::Info | Command::Verify => unreachable!("handled above"),
    };
    Ok(Outcome {
        result,
        diagnostics,
        passed,
    })
}

fn info(ctx: &Context) -> Value {
    let d = &ctx.datum;
    let positive: Vec<Value> = (0..d.positive_count())
        .map(|i| {
            let r = d.root(i);
            json!({"index": i, "weight": r.weight, "coroot": r.coroot, "coeffs": r.coeffs, "height": r.height})
        })
        .collect();
    let h = &ctx.small;
    json!({
        "label": d.label(),
        "rank": d.rank(),
        "semisimple_rank": d.semisimple_rank(),
        "cartan_matrix": d.cartan_matrix(),
        "lattice_basis": d.lattice_basis(),
        "simple_roots": d.simple_roots(),
        "simple_coroots": d.simple_coroots(),
        "fundamental_weights": d.fundamental_weights(),
        "positive_roots": positive,
        "subgroup": {
            "type": h.type_label(),
            "positive_roots": h.positive(),
            "simple_roots": h.simple(),
            "is_levi": h.is_levi(),
            "is_torus": h.is_torus(),
            "is_full": h.is_full(),
        },
    })
}

fn run_verify(doc: &ProblemDocument) -> Result<Outcome, CliError> {
    let spec = doc.suite.as_deref().unwrap_or("all");
    let suites = Suite::parse_list(spec).map_err(|e| CliError::Schema {
        pointer: "/suite".into(),
        message: e.to_string(),
    })?;
    let report = verify::run(&suites, doc.seed);
    Ok(Outcome {
        passed: report.passed,
        result: to_value(&report),
        diagnostics: None,
    })
}
