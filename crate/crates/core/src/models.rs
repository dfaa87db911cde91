//! Correlation functions `E(theta)` of rotation-invariant two-qubit boxes.
//!
//! Apart from the analytic singlet, every model is a continuous piecewise-linear
//! function stored as a node list. Consecutive nodes may share a theta (a
//! zero-length segment) only if they also share a value.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Direction;
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseNode<T> {
    pub theta: T,
    pub value: T,
}

impl<T> PiecewiseNode<T> {
    pub fn new(theta: T, value: T) -> Self {
        Self { theta, value }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ModelKind<T> {
    /// `E(theta) = -cos(theta)`.
    Singlet,
    PiecewiseLinear(Vec<PiecewiseNode<T>>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationModel<T> {
    kind: ModelKind<T>,
    label: String,
}

impl<T: Real> CorrelationModel<T> {
    /// Validated piecewise-linear model.
    pub fn piecewise(label: impl Into<String>, nodes: Vec<PiecewiseNode<T>>) -> Result<Self> {
        let model = Self { kind: ModelKind::PiecewiseLinear(nodes), label: label.into() };
        let report = validate_model(&model);
        if report.is_valid() {
            Ok(model)
        } else {
            Err(Error::Validation(report))
        }
    }

    /// Piecewise-linear model without validation; `validate_model` reports on it.
    pub fn piecewise_unchecked(label: impl Into<String>, nodes: Vec<PiecewiseNode<T>>) -> Self {
        Self { kind: ModelKind::PiecewiseLinear(nodes), label: label.into() }
    }

    pub fn kind(&self) -> &ModelKind<T> {
        &self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn nodes(&self) -> Option<&[PiecewiseNode<T>]> {
        match &self.kind {
            ModelKind::Singlet => None,
            ModelKind::PiecewiseLinear(nodes) => Some(nodes),
        }
    }

    /// `E(theta)` without the domain check. The caller guarantees
    /// `theta` in `[0, pi]`, which holds for anything from `angle_between`.
    #[inline]
    pub fn eval_unchecked(&self, theta: T) -> T {
        match &self.kind {
            ModelKind::Singlet => -theta.cos(),
            ModelKind::PiecewiseLinear(nodes) => interpolate(nodes, theta),
        }
    }

    /// `E(theta)` for `theta` in `[0, pi]`.
    pub fn eval(&self, theta: T) -> Result<T> {
        eval_correlation(self, theta)
    }
}

#[inline]
fn interpolate<T: Real>(nodes: &[PiecewiseNode<T>], theta: T) -> T {
    let k = nodes.partition_point(|n| n.theta < theta);
    if k == nodes.len() {
        return nodes[k - 1].value;
    }
    let hi = nodes[k];
    if hi.theta == theta || k == 0 {
        return hi.value;
    }
    let lo = nodes[k - 1];
    let t = (theta - lo.theta) / (hi.theta - lo.theta);
    let v = lo.value + (hi.value - lo.value) * t;
    v.max(-T::one()).min(T::one())
}

pub fn eval_correlation<T: Real>(model: &CorrelationModel<T>, theta: T) -> Result<T> {
    if !(theta >= T::zero() && theta <= T::PI()) {
        return Err(Error::Domain { theta: theta.to_f64().unwrap_or(f64::NAN) });
    }
    Ok(model.eval_unchecked(theta))
}

pub fn singlet_model<T: Real>() -> CorrelationModel<T> {
    CorrelationModel { kind: ModelKind::Singlet, label: "singlet".into() }
}

/// The original Popescu-Rohrlich spherically symmetric box in node form.
pub fn pr_box_model<T: Real>() -> CorrelationModel<T> {
    let pi = T::PI();
    let f = |num: f64, den: f64| pi * T::lit(num) / T::lit(den);
    let nodes = [
        (T::zero(), 1.0),
        (f(1.0, 6.0), 1.0),
        (f(1.0, 4.0), -1.0),
        (f(1.0, 3.0), -1.0),
        (f(2.0, 3.0), 1.0),
        (f(3.0, 4.0), 1.0),
        (f(5.0, 6.0), -1.0),
        (pi, -1.0),
    ]
    .map(|(theta, value)| PiecewiseNode::new(theta, T::lit(value)));
    CorrelationModel { kind: ModelKind::PiecewiseLinear(nodes.to_vec()), label: "pr".into() }
}

/// Admissible range of the lambda-box parameter.
pub fn lambda_range<T: Real>() -> (T, T) {
    (T::PI() / T::lit(6.0), T::lit(4.0) * T::PI() / T::lit(9.0))
}

/// Member `lambda` of the lambda-box family, `lambda` in `[pi/6, 4pi/9]`.
pub fn lambda_box_model<T: Real>(lambda: T) -> Result<CorrelationModel<T>> {
    let (lo, hi) = lambda_range::<T>();
    let slack = T::lit(1e-12);
    if !(lambda >= lo - slack && lambda <= hi + slack) {
        return Err(Error::Parameter(format!(
            "lambda = {lambda} outside [{lo}, {hi}] (pi/6 to 4pi/9)"
        )));
    }
    let lambda = lambda.max(lo).min(hi);
    let pi = T::PI();
    let p18 = pi / T::lit(18.0);
    let one = T::one();
    let mut nodes = vec![
        PiecewiseNode::new(T::zero(), one),
        PiecewiseNode::new(p18, one),
        PiecewiseNode::new(pi / T::lit(6.0), -one),
        PiecewiseNode::new(lambda, -one),
        PiecewiseNode::new(lambda + p18, T::zero()),
        PiecewiseNode::new(T::lit(17.0) * p18 - lambda, T::zero()),
        PiecewiseNode::new(pi - lambda, one),
        PiecewiseNode::new(T::lit(5.0) * pi / T::lit(6.0), one),
        PiecewiseNode::new(T::lit(17.0) * p18, -one),
        PiecewiseNode::new(pi, -one),
    ];
    // the collapsing nodes at the range ends can land an ulp out of order
    for k in 1..nodes.len() {
        if nodes[k].theta < nodes[k - 1].theta {
            nodes[k].theta = nodes[k - 1].theta;
        }
    }
    Ok(CorrelationModel {
        kind: ModelKind::PiecewiseLinear(nodes),
        label: format!("lambda:{lambda}"),
    })
}

/// One failed structural check of a model.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    TooFewNodes { count: usize },
    NonFinite { index: usize },
    ThetaOutOfDomain { index: usize, theta: f64 },
    ValueOutOfRange { index: usize, value: f64 },
    Unsorted { index: usize },
    Discontinuity { index: usize },
    FirstThetaNotZero { theta: f64 },
    DomainNotCovered { last_theta: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::TooFewNodes { count } => write!(f, "need at least 2 nodes, got {count}"),
            Self::NonFinite { index } => write!(f, "node {index}: non-finite theta or value"),
            Self::ThetaOutOfDomain { index, theta } => {
                write!(f, "node {index}: theta {theta} outside [0, pi]")
            }
            Self::ValueOutOfRange { index, value } => {
                write!(f, "node {index}: value {value} outside [-1, 1]")
            }
            Self::Unsorted { index } => write!(f, "node {index}: theta smaller than previous node"),
            Self::Discontinuity { index } => {
                write!(f, "node {index}: repeated theta with a different value (discontinuity)")
            }
            Self::FirstThetaNotZero { theta } => write!(f, "first theta is {theta}, must be 0"),
            Self::DomainNotCovered { last_theta } => {
                write!(f, "domain not covered: last theta is {last_theta}, must be pi")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Structural checks on a model. The singlet is always valid. For node
/// lists, `|value| <= 1` at every node bounds the interpolant everywhere.
pub fn validate_model<T: Real>(model: &CorrelationModel<T>) -> ValidationReport {
    let mut violations = Vec::new();
    let nodes = match &model.kind {
        ModelKind::Singlet => return ValidationReport::default(),
        ModelKind::PiecewiseLinear(nodes) => nodes,
    };
    if nodes.len() < 2 {
        violations.push(Violation::TooFewNodes { count: nodes.len() });
        return ValidationReport { violations };
    }
    let pi = T::PI();
    // half an ulp of pi either way; stored files carry pi to 17 digits
    let pi_tol = pi * T::epsilon();
    for (index, node) in nodes.iter().enumerate() {
        if !node.theta.is_finite() || !node.value.is_finite() {
            violations.push(Violation::NonFinite { index });
            continue;
        }
        if node.theta < T::zero() || node.theta > pi + pi_tol {
            violations.push(Violation::ThetaOutOfDomain { index, theta: node.theta.as_f64() });
        }
        if node.value.abs() > T::one() {
            violations.push(Violation::ValueOutOfRange { index, value: node.value.as_f64() });
        }
        if index > 0 {
            let prev = nodes[index - 1];
            if node.theta < prev.theta {
                violations.push(Violation::Unsorted { index });
            } else if node.theta == prev.theta && node.value != prev.value {
                violations.push(Violation::Discontinuity { index });
            }
        }
    }
    let first = nodes[0].theta;
    if first != T::zero() {
        violations.push(Violation::FirstThetaNotZero { theta: first.as_f64() });
    }
    let last = nodes[nodes.len() - 1].theta;
    if (last - pi).abs() > pi_tol {
        violations.push(Violation::DomainNotCovered { last_theta: last.as_f64() });
    }
    ValidationReport { violations }
}

/// On-disk form: `{ "label": ..., "nodes": [[theta, value], ...] }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelDocument {
    pub label: String,
    pub nodes: Vec<[f64; 2]>,
}

impl<T: Real> CorrelationModel<T> {
    /// File form of a piecewise model; `None` for the singlet.
    pub fn to_document(&self) -> Option<ModelDocument> {
        self.nodes().map(|nodes| ModelDocument {
            label: self.label.clone(),
            nodes: nodes.iter().map(|n| [n.theta.as_f64(), n.value.as_f64()]).collect(),
        })
    }
}

/// Parses and validates a model document.
pub fn load_model<T: Real>(document: &str) -> Result<CorrelationModel<T>> {
    let doc: ModelDocument = serde_json::from_str(document)?;
    let nodes = doc.nodes.iter().map(|&[theta, value]| PiecewiseNode::new(T::lit(theta), T::lit(value))).collect();
    CorrelationModel::piecewise(doc.label, nodes)
}

pub fn load_model_file<T: Real>(path: impl AsRef<Path>) -> Result<CorrelationModel<T>> {
    load_model(&std::fs::read_to_string(path)?)
}

/// Serializes a piecewise model; the singlet has no node form.
pub fn save_model<T: Real>(model: &CorrelationModel<T>) -> Result<String> {
    let doc = model.to_document().ok_or_else(|| Error::Parameter("the singlet has no node-list form".into()))?;
    Ok(serde_json::to_string_pretty(&doc)?)
}

/// `(p++, p--, p+-, p-+)` for outcomes along two directions at angle `theta`.
///
/// Marginals are uniform by construction: `p+- = 1/2 - p++`, so each party
/// sees each outcome with probability exactly 1/2.
pub fn joint_outcome_probabilities<T: Real>(model: &CorrelationModel<T>, theta: T) -> Result<[T; 4]> {
    let e = eval_correlation(model, theta)?;
    let half = T::lit(0.5);
    let same = (T::one() + e) / T::lit(4.0);
    let diff = half - same;
    Ok([same, same, diff, diff])
}

/// Single-party expectation `E(d)`. Every model here is rotation invariant
/// with unbiased outcomes, so this is zero.
pub fn single_party_marginal<T: Real>(model: &CorrelationModel<T>, _direction: &Direction<T>) -> T {
    match model.kind {
        ModelKind::Singlet | ModelKind::PiecewiseLinear(_) => T::zero(),
    }
}
