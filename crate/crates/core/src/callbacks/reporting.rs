use std::io::{self, IsTerminal, Stdout, Write};

use super::{Callback, CallbackDecision, CallbackResult, State, StepState};
use crate::numerics::Scalar;

/// Writes one line with the objective per `Evaluate` (non-epoch optimizers)
/// or per `EndEpoch`.
pub struct PrintLoss<W: Write> {
    sink: W,
    epochs_seen: bool,
}

impl PrintLoss<Stdout> {
    pub fn stdout() -> Self {
        Self::new(io::stdout())
    }
}

impl<W: Write> PrintLoss<W> {
    pub fn new(sink: W) -> Self {
        Self {
            sink,
            epochs_seen: false,
        }
    }

    pub fn sink(&self) -> &W {
        &self.sink
    }

    pub fn into_inner(self) -> W {
        self.sink
    }
}

impl<E: Scalar, W: Write> Callback<E> for PrintLoss<W> {
    fn evaluate(&mut self, _state: &State<'_, E>, objective: E) -> CallbackResult {
        if !self.epochs_seen {
            writeln!(self.sink, "{objective}")?;
        }
        Ok(CallbackDecision::Continue)
    }

    fn begin_epoch(&mut self, _state: &State<'_, E>, _epoch: usize, _objective: E) -> CallbackResult {
        self.epochs_seen = true;
        Ok(CallbackDecision::Continue)
    }

    fn end_epoch(&mut self, _state: &State<'_, E>, _epoch: usize, objective: E) -> CallbackResult {
        writeln!(self.sink, "{objective}")?;
        Ok(CallbackDecision::Continue)
    }
}

/// Text progress bar over epochs, or over iterations for optimizers without
/// epochs.
///
/// On a terminal the bar is redrawn in place with a carriage return; on other
/// sinks every change of the integer percentage is written as its own line.
pub struct ProgressBar<W: Write> {
    sink: W,
    redraw: bool,
    width: usize,
    total: Option<usize>,
    epochs_seen: bool,
    last_percent: Option<usize>,
    finished: bool,
}

impl ProgressBar<Stdout> {
    pub fn stdout() -> Self {
        let redraw = io::stdout().is_terminal();
        Self::new(io::stdout()).with_redraw(redraw)
    }
}

impl<W: Write> ProgressBar<W> {
    pub fn new(sink: W) -> Self {
        Self {
            sink,
            redraw: false,
            width: 50,
            total: None,
            epochs_seen: false,
            last_percent: None,
            finished: false,
        }
    }

    pub fn with_redraw(mut self, redraw: bool) -> Self {
        self.redraw = redraw;
        self
    }

    pub fn with_width(mut self, width: usize) -> Self {
        self.width = width.max(1);
        self
    }

    /// Fixes the number of units (epochs or iterations) at 100%.
    pub fn with_total(mut self, total: usize) -> Self {
        self.total = Some(total);
        self
    }

    pub fn sink(&self) -> &W {
        &self.sink
    }

    pub fn into_inner(self) -> W {
        self.sink
    }

    /// Renders progress `done / total`.
    pub fn render(&mut self, done: usize, total: usize) -> io::Result<()> {
        let percent = if total == 0 {
            100
        } else {
            (done.min(total) * 100) / total
        };
        if self.last_percent == Some(percent) || self.finished {
            return Ok(());
        }
        self.last_percent = Some(percent);
        let filled = percent * self.width / 100;
        let mut bar = String::with_capacity(self.width + 8);
        bar.push('[');
        for i in 0..self.width {
            bar.push(if i < filled {
                '='
            } else if i == filled {
                '>'
            } else {
                ' '
            });
        }
        bar.push(']');
        if self.redraw {
            write!(self.sink, "\r{bar} {percent:>3}%")?;
            if percent == 100 {
                writeln!(self.sink)?;
            }
        } else {
            writeln!(self.sink, "{bar} {percent:>3}%")?;
        }
        if percent == 100 {
            self.finished = true;
        }
        self.sink.flush()
    }
}

impl<E: Scalar, W: Write> Callback<E> for ProgressBar<W> {
    fn begin_optimization(&mut self, state: &State<'_, E>) -> CallbackResult {
        if self.total.is_none() {
            self.total = state.progress.max_epochs.or(state.progress.max_iterations);
        }
        self.last_percent = None;
        self.finished = false;
        if let Some(total) = self.total {
            self.render(0, total)?;
        }
        Ok(CallbackDecision::Continue)
    }

    fn begin_epoch(&mut self, _state: &State<'_, E>, _epoch: usize, _objective: E) -> CallbackResult {
        self.epochs_seen = true;
        Ok(CallbackDecision::Continue)
    }

    fn end_epoch(&mut self, state: &State<'_, E>, _epoch: usize, _objective: E) -> CallbackResult {
        if let Some(total) = self.total {
            self.render(state.progress.epoch, total)?;
        }
        Ok(CallbackDecision::Continue)
    }

    fn step_taken(&mut self, state: &mut StepState<'_, E>) -> CallbackResult {
        if !self.epochs_seen {
            if let Some(total) = self.total {
                self.render(state.progress.iteration, total)?;
            }
        }
        Ok(CallbackDecision::Continue)
    }

    fn end_optimization(&mut self, _state: &State<'_, E>) -> CallbackResult {
        if self.redraw && !self.finished && self.last_percent.is_some() {
            writeln!(self.sink)?;
        }
        Ok(CallbackDecision::Continue)
    }
}
