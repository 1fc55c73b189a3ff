#![allow(dead_code)]

use optkit::callbacks::{Callback, CallbackDecision, CallbackResult, EventKind, State, StepState};
use optkit::numerics::Coordinates;
use optkit::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `count` points with entries uniform on `[-range, range)`.
pub fn seeded_points(seed: u64, count: usize, dimension: usize, range: f64) -> Vec<Coordinates<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| Coordinates::from_vec((0..dimension).map(|_| rng.random_range(-range..range)).collect()))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Record<E> {
    pub kind: EventKind,
    pub coordinates: Vec<E>,
    pub value: Option<E>,
    /// The gradient carried by `Gradient` events.
    pub gradient: Option<Vec<E>>,
}

/// Logs every event with a copy of the coordinates.
#[derive(Debug, Default)]
pub struct Recorder<E> {
    pub log: Vec<Record<E>>,
}

impl<E: Scalar> Recorder<E> {
    pub fn new() -> Self {
        Self { log: Vec::new() }
    }

    fn push(&mut self, kind: EventKind, x: &Coordinates<E>, value: Option<E>) -> CallbackResult {
        self.log.push(Record {
            kind,
            coordinates: x.as_slice().to_vec(),
            value,
            gradient: None,
        });
        Ok(CallbackDecision::Continue)
    }

    pub fn kinds(&self) -> std::collections::BTreeSet<String> {
        self.log.iter().map(|r| format!("{:?}", r.kind)).collect()
    }

    pub fn of(&self, kind: EventKind) -> impl Iterator<Item = &Record<E>> {
        self.log.iter().filter(move |r| r.kind == kind)
    }
}

impl<E: Scalar> Callback<E> for Recorder<E> {
    fn begin_optimization(&mut self, s: &State<'_, E>) -> CallbackResult {
        self.push(EventKind::BeginOptimization, s.coordinates, None)
    }

    fn end_optimization(&mut self, s: &State<'_, E>) -> CallbackResult {
        self.push(EventKind::EndOptimization, s.coordinates, None)
    }

    fn evaluate(&mut self, s: &State<'_, E>, objective: E) -> CallbackResult {
        self.push(EventKind::Evaluate, s.coordinates, Some(objective))
    }

    fn evaluate_constraint(&mut self, s: &State<'_, E>, _: usize, value: E) -> CallbackResult {
        self.push(EventKind::EvaluateConstraint, s.coordinates, Some(value))
    }

    fn gradient(&mut self, s: &State<'_, E>, gradient: &Coordinates<E>) -> CallbackResult {
        self.push(EventKind::Gradient, s.coordinates, None)?;
        self.log.last_mut().unwrap().gradient = Some(gradient.as_slice().to_vec());
        Ok(CallbackDecision::Continue)
    }

    fn gradient_constraint(&mut self, s: &State<'_, E>, _: usize, _: &Coordinates<E>) -> CallbackResult {
        self.push(EventKind::GradientConstraint, s.coordinates, None)
    }

    fn begin_epoch(&mut self, s: &State<'_, E>, _: usize, objective: E) -> CallbackResult {
        self.push(EventKind::BeginEpoch, s.coordinates, Some(objective))
    }

    fn end_epoch(&mut self, s: &State<'_, E>, _: usize, objective: E) -> CallbackResult {
        self.push(EventKind::EndEpoch, s.coordinates, Some(objective))
    }

    fn step_taken(&mut self, s: &mut StepState<'_, E>) -> CallbackResult {
        self.push(EventKind::StepTaken, s.coordinates, None)
    }
}

/// Implements no handler at all.
pub struct Inert;

impl<E: Scalar> Callback<E> for Inert {}
