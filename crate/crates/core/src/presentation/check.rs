//! Evaluating relation instances in a representation and judging the residual.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::params::{ParamsRecord, RhoParams};
use crate::presentation::registry::{basis_expr, Family, Reduced, RelationInstance};
use crate::rep::{evaluate_expr, Representation, Witness};
use crate::scalar::QuadScalar;

/// What the residual of an instance is expected to be.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Zero,
    /// Negative control: the reduced form has nonzero coefficients on
    /// independent images, so the residual cannot vanish.
    Nonzero,
    /// Neither claimed nor excluded; the residual is only reported.
    Unasserted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    NegativeControl,
    Fail,
    Unasserted,
}

impl Outcome {
    pub fn is_failure(self) -> bool {
        self == Outcome::Fail
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub family: Family,
    pub n: usize,
    pub site: usize,
    pub label: String,
    pub rep: String,
    pub params: ParamsRecord,
    pub residual_zero: bool,
    pub residual_norm: String,
    pub expectation: Expectation,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Named sub-expressions (such as `[F]_1`) whose own value is nonzero.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub nonzero_groups: Vec<String>,
}

fn validate<R: Representation>(inst: &RelationInstance, rep: &R, params: &RhoParams) -> Result<()> {
    if inst.n != rep.n() {
        return Err(Error::StrandMismatch { left: inst.n, right: rep.n() });
    }
    if &params.lambda != rep.lambda() {
        return Err(Error::LoopValueMismatch { params: params.lambda.to_string(), rep: rep.lambda().to_string() });
    }
    let degenerate = params.b.is_zero() && !params.a.is_zero() && !params.c.is_zero();
    if degenerate && inst.family.uses_params() && matches!(inst.reduced, Reduced::Linear(_)) {
        return Err(Error::DegenerateParameters(format!(
            "b = 0 with a, c nonzero forces v_i = v_(i+1) in {}",
            inst.family
        )));
    }
    Ok(())
}

/// Expected residual of `inst` in `rep`, from its Brauer-reduced form.
pub fn expectation<R: Representation>(inst: &RelationInstance, rep: &R, params: &RhoParams) -> Result<Expectation> {
    let coeffs = match &inst.reduced {
        Reduced::Identity => return Ok(Expectation::Zero),
        Reduced::Linear(cs) => cs,
    };
    let support: Vec<usize> = (0..4).filter(|&k| !coeffs[k].is_zero()).collect();
    if support.is_empty() {
        return Ok(Expectation::Zero);
    }
    if inst.family.is_forbidden_move() && rep.local_dim() == Some(2) {
        // ρ ∝ E★ = 1 − E satisfies both forbidden moves in the d = 2 model
        let star = !inst.family.uses_params() || (!params.a.is_zero() && params.a == params.b.neg());
        if star {
            return Ok(Expectation::Zero);
        }
    }
    let images =
        support.iter().map(|&k| evaluate_expr(&basis_expr(k, inst.site), rep, params)).collect::<Result<Vec<_>>>()?;
    Ok(if rep.independent(&images)? { Expectation::Nonzero } else { Expectation::Unasserted })
}

pub fn check_relation<R: Representation>(inst: &RelationInstance, rep: &R, params: &RhoParams) -> Result<CheckReport> {
    validate(inst, rep, params)?;
    let lhs = evaluate_expr(&inst.lhs, rep, params)?;
    let rhs = evaluate_expr(&inst.rhs, rep, params)?;
    let residual = rep.add(&lhs, &rep.scale(&QuadScalar::from_int(-1), &rhs)?)?;
    let residual_zero = rep.is_zero(&residual);
    let expectation = expectation(inst, rep, params)?;
    let outcome = match (expectation, residual_zero) {
        (Expectation::Zero, true) => Outcome::Pass,
        (Expectation::Nonzero, false) => Outcome::NegativeControl,
        (Expectation::Unasserted, _) => Outcome::Unasserted,
        _ => Outcome::Fail,
    };
    let mut nonzero_groups = Vec::new();
    for side in [&inst.lhs, &inst.rhs] {
        for (name, group) in side.named_groups() {
            if nonzero_groups.iter().any(|g| g == name) {
                continue;
            }
            if !rep.is_zero(&evaluate_expr(group, rep, params)?) {
                nonzero_groups.push(name.to_string());
            }
        }
    }
    Ok(CheckReport {
        family: inst.family,
        n: inst.n,
        site: inst.site,
        label: inst.label.clone(),
        rep: rep.name().to_string(),
        params: params.to_record(),
        residual_zero,
        residual_norm: rep.residual_norm(&residual),
        expectation,
        outcome,
        witness: rep.witness(&residual),
        nonzero_groups,
    })
}

/// Checks run in parallel; reports come back in instance order.
pub fn check_all<R: Representation>(
    instances: &[RelationInstance],
    rep: &R,
    params: &RhoParams,
) -> Result<Vec<CheckReport>> {
    instances.par_iter().map(|inst| check_relation(inst, rep, params)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::registry::relation_instances;
    use crate::rep::{DiagramRep, MatrixRep};
    use crate::tensor::RepConfig;

    fn run<R: Representation>(family: Family, rep: &R, params: &RhoParams) -> Vec<CheckReport> {
        let inst = relation_instances(family, rep.n(), params).unwrap();
        check_all(&inst, rep, params).unwrap()
    }

    #[test]
    fn vev_holds_in_diagrams() {
        let rep = DiagramRep::new(3, QuadScalar::from_int(5)).unwrap();
        let p = RhoParams::rational(2, 7, -3, 5);
        for r in run(Family::Vev, &rep, &p) {
            assert!(r.residual_zero);
            assert_eq!(r.outcome, Outcome::Pass);
        }
    }

    #[test]
    fn wtl1_negative_control_at_lambda_three() {
        let lambda = QuadScalar::from_int(3);
        let p = RhoParams::braid_plus(lambda.clone()).unwrap().with_c(QuadScalar::one()).unwrap();
        let rep = DiagramRep::new(3, lambda).unwrap();
        let reports = run(Family::Wtl1, &rep, &p);
        assert_eq!(reports.len(), 1);
        assert!(!reports[0].residual_zero);
        assert_eq!(reports[0].expectation, Expectation::Nonzero);
        assert_eq!(reports[0].outcome, Outcome::NegativeControl);
        assert!(reports[0].witness.is_some());
    }

    #[test]
    fn forbidden_star_moves_in_diagrams_and_matrices() {
        let p = RhoParams::rational(1, -1, 0, 2);
        let rep = DiagramRep::new(3, QuadScalar::from_int(2)).unwrap();
        for r in run(Family::F1Star, &rep, &p) {
            // permutation terms v_i − v_(i+1) survive in the diagram algebra
            assert!(!r.residual_zero);
        }
        let rep = MatrixRep::new(RepConfig::new(3, 2).unwrap()).unwrap();
        for r in run(Family::Fu22, &rep, &p) {
            assert!(r.residual_zero);
            assert_eq!(r.outcome, Outcome::Pass);
        }
    }

    #[test]
    fn degenerate_parameters_are_rejected() {
        let p = RhoParams::rational(1, 0, 1, 2);
        let rep = DiagramRep::new(3, QuadScalar::from_int(2)).unwrap();
        let inst = relation_instances(Family::Vtl, 3, &p).unwrap();
        assert!(matches!(check_relation(&inst[0], &rep, &p), Err(Error::DegenerateParameters(_))));
        // parameter-free families are unaffected
        let inst = relation_instances(Family::Vev, 3, &p).unwrap();
        assert!(check_relation(&inst[0], &rep, &p).is_ok());
    }

    #[test]
    fn loop_value_must_match() {
        let p = RhoParams::rational(1, -1, 0, 3);
        let rep = DiagramRep::new(3, QuadScalar::from_int(2)).unwrap();
        let inst = relation_instances(Family::Tlr, 3, &p).unwrap();
        assert!(matches!(check_relation(&inst[0], &rep, &p), Err(Error::LoopValueMismatch { .. })));
    }

    #[test]
    fn nonzero_groups_name_the_brackets() {
        let p = RhoParams::rational(1, 2, 3, 4);
        let rep = DiagramRep::new(3, QuadScalar::from_int(4)).unwrap();
        let r = &run(Family::Vtl, &rep, &p)[0];
        assert!(r.nonzero_groups.iter().any(|g| g == "[F]_1"));
    }
}
