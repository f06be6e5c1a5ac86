use std::sync::Arc;

use serde_json::{json, Value};
use twind_core::rootdata::DEFAULT_WEYL_ORDER_CAP;
use twind_core::{
    Error, InductionProblem, RationalWeight, RootDatum, SubgroupDatum, TorusElement, TwistClass,
};

use crate::error::CliError;
use crate::expr::{parse_element, parse_weight, Env};
use crate::problem::{InputSpec, ProblemDocument, SubgroupSpec, WeightSpec};

/// A validated problem document bound to its root datum and subgroup.
pub struct Context {
    pub doc: ProblemDocument,
    pub datum: Arc<RootDatum>,
    pub big: SubgroupDatum,
    pub small: SubgroupDatum,
}

fn schema(pointer: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Schema {
        pointer: pointer.into(),
        message: message.into(),
    }
}

impl Context {
    pub fn new(doc: ProblemDocument) -> Result<Self, CliError> {
        let Some(label) = doc.group.as_deref() else {
            return Err(schema("/group", "missing field"));
        };
        let datum = Arc::new(RootDatum::from_label(label)?);
        let small = match &doc.subgroup {
            SubgroupSpec::Preset(name) => SubgroupDatum::preset(&datum, name)?,
            SubgroupSpec::Roots { roots } => {
                let n = datum.positive_count();
                if let Some(i) = roots.iter().position(|&r| r >= n) {
                    return Err(schema(
                        format!("/subgroup/roots/{i}"),
                        format!(
                            "root index {} out of range: {label} has {n} positive roots",
                            roots[i]
                        ),
                    ));
                }
                SubgroupDatum::from_root_indices(&datum, roots)?
            }
            SubgroupSpec::Simple { simple } => {
                let n = datum.semisimple_rank();
                if let Some(i) = simple.iter().position(|&r| r >= n) {
                    return Err(schema(
                        format!("/subgroup/simple/{i}"),
                        format!(
                            "simple root index {} out of range: {label} has {n} simple roots",
                            simple[i]
                        ),
                    ));
                }
                SubgroupDatum::levi(&datum, simple)?
            }
        };
        let big = SubgroupDatum::full(&datum);
        let ctx = Context {
            doc,
            datum,
            big,
            small,
        };
        ctx.check_lengths()?;
        Ok(ctx)
    }

    fn check_lengths(&self) -> Result<(), CliError> {
        let n = self.datum.rank();
        let check = |v: &Option<Vec<i64>>, p: &str| match v {
            Some(v) if v.len() != n => Err(schema(
                p,
                format!("expected {n} entries, found {}", v.len()),
            )),
            _ => Ok(()),
        };
        check(&self.doc.gamma, "/gamma")
    }

    pub fn cap(&self) -> u64 {
        self.doc.max_weyl_order.unwrap_or(DEFAULT_WEYL_ORDER_CAP)
    }

    fn env<'a>(&'a self, problem: Option<&'a InductionProblem>) -> Env<'a> {
        Env {
            big: &self.big,
            small: &self.small,
            problem,
        }
    }

    /// Resolves a weight; vectors must have the rank of X(T).
    pub fn weight(&self, spec: &WeightSpec, pointer: &str) -> Result<RationalWeight, CliError> {
        let n = self.datum.rank();
        let w = match spec {
            WeightSpec::Integral(v) => RationalWeight::integral(v.clone()),
            WeightSpec::Rational(r) => r.clone(),
            WeightSpec::Expr(s) => return parse_weight(s, &self.env(None), pointer),
        };
        if w.rank() != n {
            let p = match spec {
                WeightSpec::Rational(_) => format!("{pointer}/num"),
                _ => pointer.to_string(),
            };
            return Err(schema(
                p,
                format!("expected {n} entries, found {}", w.rank()),
            ));
        }
        Ok(w)
    }

    pub fn sigma(&self) -> Result<TwistClass, CliError> {
        match &self.doc.twist {
            Some(spec) => Ok(TwistClass::of(&self.weight(spec, "/twist")?)),
            None => Ok(TwistClass::zero(self.datum.rank())),
        }
    }

    pub fn problem(&self) -> Result<InductionProblem, CliError> {
        Ok(InductionProblem::new(
            &self.small,
            self.sigma()?,
            self.cap(),
        )?)
    }

    /// The document's `input`, or `default` (an expression) when absent.
    pub fn input(
        &self,
        problem: &InductionProblem,
        default: &str,
    ) -> Result<TorusElement, CliError> {
        let env = self.env(Some(problem));
        match &self.doc.input {
            None => parse_element(default, &env, "/input"),
            Some(InputSpec::Expr(s)) => parse_element(s, &env, "/input"),
            Some(InputSpec::Terms { twist, terms }) => {
                let n = self.datum.rank();
                let mut ws = Vec::with_capacity(terms.len());
                for (i, t) in terms.iter().enumerate() {
                    ws.push((
                        self.weight(&t.weight, &format!("/input/terms/{i}/weight"))?,
                        t.coeff,
                    ));
                }
                let twist = match (twist, ws.first()) {
                    (Some(t), _) => {
                        if t.rank() != n {
                            return Err(schema(
                                "/input/twist/num",
                                format!("expected {n} entries, found {}", t.rank()),
                            ));
                        }
                        TwistClass::of(t)
                    }
                    (None, Some((w, _))) => TwistClass::of(w),
                    (None, None) => TwistClass::zero(n),
                };
                Ok(TorusElement::from_terms(
                    twist,
                    ws.iter().map(|(w, c)| (w, *c)),
                )?)
            }
        }
    }

    pub fn require_weight(
        &self,
        field: &str,
        spec: &Option<WeightSpec>,
    ) -> Result<RationalWeight, CliError> {
        match spec {
            Some(s) => self.weight(s, &format!("/{field}")),
            None => Err(schema(format!("/{field}"), "missing field")),
        }
    }

    /// `|W_G|`, `|W_H|`, `|W^H|`, the three ρ vectors and the π1 report.
    /// Group orders are omitted when enumeration is refused by the cap.
    pub fn diagnostics(&self, problem: Option<&InductionProblem>) -> Value {
        let rho_h = self.small.rho_own();
        let rho_m = self.big.rho_own() - rho_h;
        json!({
            "group": self.datum.label(),
            "subgroup": self.small.type_label(),
            "weyl_order_g": self.datum.weyl_order() as u64,
            "weyl_order_h": problem.map(|p| p.weyl_small().order()),
            "coset_count": problem.map(|p| p.coset_reps().len()),
            "rho_g": self.big.rho_own(),
            "rho_h": rho_h,
            "rho_m": rho_m,
            "pi1": self.datum.pi1(),
        })
    }
}

/// Builds the induction problem unless only the group-order cap refuses it.
pub fn optional_problem(ctx: &Context) -> Result<Option<InductionProblem>, CliError> {
    match ctx.problem() {
        Ok(p) => Ok(Some(p)),
        Err(CliError::Core(Error::OrderCapExceeded { .. })) => Ok(None),
        Err(e) => Err(e),
    }
}
