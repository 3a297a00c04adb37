//! Dense multilayer perceptron with exact reverse-mode gradients.
//!
//! Serves as the actor (`mu_theta`, or the mean of `pi_theta`), the action
//! value critic `Q^w(s, a)` and the state value critic `V^w(s)`. Everything
//! is `f64`. Batched inputs are row-major: one sample per row.

use std::path::Path;

use ndarray::{Array1, Array2, Axis, Zip};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const CHECKPOINT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Activation {
    Identity,
    Relu,
    Tanh,
}

impl Activation {
    fn apply(self, z: f64) -> f64 {
        match self {
            Activation::Identity => z,
            Activation::Relu => z.max(0.0),
            Activation::Tanh => z.tanh(),
        }
    }

    /// Derivative expressed through the pre-activation `z` and output `y`.
    fn derivative(self, z: f64, y: f64) -> f64 {
        match self {
            Activation::Identity => 1.0,
            Activation::Relu => {
                if z > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Activation::Tanh => 1.0 - y * y,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MlpSpec {
    pub layer_sizes: Vec<usize>,
    pub hidden_activation: Activation,
    pub output_activation: Activation,
}

impl MlpSpec {
    pub fn new(
        layer_sizes: Vec<usize>,
        hidden_activation: Activation,
        output_activation: Activation,
    ) -> Result<Self> {
        let spec = MlpSpec {
            layer_sizes,
            hidden_activation,
            output_activation,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// `input -> hidden... -> output`.
    pub fn with_hidden(
        input: usize,
        hidden: &[usize],
        output: usize,
        hidden_activation: Activation,
        output_activation: Activation,
    ) -> Result<Self> {
        let mut sizes = Vec::with_capacity(hidden.len() + 2);
        sizes.push(input);
        sizes.extend_from_slice(hidden);
        sizes.push(output);
        Self::new(sizes, hidden_activation, output_activation)
    }

    pub fn validate(&self) -> Result<()> {
        if self.layer_sizes.len() < 2 {
            return Err(Error::Config(
                "an MLP needs at least input and output sizes".to_string(),
            ));
        }
        if self.layer_sizes.iter().any(|&n| n == 0) {
            return Err(Error::Config("MLP layer sizes must be positive".to_string()));
        }
        if self.hidden_activation == Activation::Identity {
            return Err(Error::Config(
                "hidden activation must be relu or tanh".to_string(),
            ));
        }
        if self.output_activation == Activation::Relu {
            return Err(Error::Config(
                "output activation must be identity or tanh".to_string(),
            ));
        }
        Ok(())
    }

    pub fn input_dim(&self) -> usize {
        self.layer_sizes[0]
    }

    pub fn output_dim(&self) -> usize {
        *self.layer_sizes.last().unwrap()
    }

    pub fn num_layers(&self) -> usize {
        self.layer_sizes.len() - 1
    }

    fn activation(&self, layer: usize) -> Activation {
        if layer + 1 == self.num_layers() {
            self.output_activation
        } else {
            self.hidden_activation
        }
    }
}

/// Gradients (or any other tensor) shaped like an MLP's parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamGrads {
    pub weights: Vec<Array2<f64>>,
    pub biases: Vec<Array1<f64>>,
}

impl ParamGrads {
    pub fn zeros(spec: &MlpSpec) -> Self {
        let weights = spec
            .layer_sizes
            .windows(2)
            .map(|w| Array2::zeros((w[1], w[0])))
            .collect();
        let biases = spec.layer_sizes[1..].iter().map(|&n| Array1::zeros(n)).collect();
        ParamGrads { weights, biases }
    }

    fn same_shape(&self, other: &ParamGrads) -> bool {
        self.weights.len() == other.weights.len()
            && self
                .weights
                .iter()
                .zip(&other.weights)
                .all(|(a, b)| a.dim() == b.dim())
            && self
                .biases
                .iter()
                .zip(&other.biases)
                .all(|(a, b)| a.len() == b.len())
    }

    pub fn add_assign(&mut self, other: &ParamGrads) {
        for (a, b) in self.weights.iter_mut().zip(&other.weights) {
            *a += b;
        }
        for (a, b) in self.biases.iter_mut().zip(&other.biases) {
            *a += b;
        }
    }

    pub fn scale(&mut self, k: f64) {
        for w in &mut self.weights {
            w.mapv_inplace(|v| v * k);
        }
        for b in &mut self.biases {
            b.mapv_inplace(|v| v * k);
        }
    }

    pub fn norm(&self) -> f64 {
        let sq: f64 = self
            .weights
            .iter()
            .map(|w| w.iter().map(|v| v * v).sum::<f64>())
            .chain(self.biases.iter().map(|b| b.iter().map(|v| v * v).sum::<f64>()))
            .sum();
        sq.sqrt()
    }

    /// Rescales to at most `max_norm` in the global L2 norm.
    pub fn clip_norm(&mut self, max_norm: f64) {
        let n = self.norm();
        if n > max_norm && n.is_finite() {
            self.scale(max_norm / n);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &f64> {
        self.weights
            .iter()
            .flat_map(|w| w.iter())
            .chain(self.biases.iter().flat_map(|b| b.iter()))
    }

    pub fn is_finite(&self) -> bool {
        self.iter().all(|v| v.is_finite())
    }
}

/// Parameter gradients plus the gradient with respect to the input.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientBundle {
    pub params: ParamGrads,
    pub input: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Ascent,
    Descent,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::Ascent => 1.0,
            Direction::Descent => -1.0,
        }
    }
}

/// Weights are `out x in`, so layer `l` maps `x` to `W_l x + b_l`.
#[derive(Debug, Clone, PartialEq)]
pub struct MlpParams {
    spec: MlpSpec,
    pub weights: Vec<Array2<f64>>,
    pub biases: Vec<Array1<f64>>,
}

/// Per-layer pre-activations and outputs of a batched forward pass.
struct Trace {
    pre: Vec<Array2<f64>>,
    post: Vec<Array2<f64>>,
}

impl MlpParams {
    pub fn zeros(spec: MlpSpec) -> Result<Self> {
        spec.validate()?;
        let ParamGrads { weights, biases } = ParamGrads::zeros(&spec);
        Ok(MlpParams {
            spec,
            weights,
            biases,
        })
    }

    /// Uniform in `[-1/sqrt(fan_in), 1/sqrt(fan_in)]` for weights and biases.
    pub fn init<R: Rng + ?Sized>(spec: MlpSpec, rng: &mut R) -> Result<Self> {
        let mut params = Self::zeros(spec)?;
        for (w, b) in params.weights.iter_mut().zip(params.biases.iter_mut()) {
            let bound = 1.0 / (w.ncols() as f64).sqrt();
            w.mapv_inplace(|_| rng.random_range(-bound..=bound));
            b.mapv_inplace(|_| rng.random_range(-bound..=bound));
        }
        Ok(params)
    }

    pub fn from_parts(
        spec: MlpSpec,
        weights: Vec<Array2<f64>>,
        biases: Vec<Array1<f64>>,
    ) -> Result<Self> {
        let params = MlpParams {
            spec,
            weights,
            biases,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        self.spec.validate()?;
        let expected = ParamGrads::zeros(&self.spec);
        let actual = ParamGrads {
            weights: self.weights.clone(),
            biases: self.biases.clone(),
        };
        if !expected.same_shape(&actual) {
            return Err(Error::Config(
                "MLP parameter shapes do not match layer sizes".to_string(),
            ));
        }
        if !self.is_finite() {
            return Err(Error::Config("MLP parameters must be finite".to_string()));
        }
        Ok(())
    }

    pub fn spec(&self) -> &MlpSpec {
        &self.spec
    }

    pub fn input_dim(&self) -> usize {
        self.spec.input_dim()
    }

    pub fn output_dim(&self) -> usize {
        self.spec.output_dim()
    }

    pub fn num_params(&self) -> usize {
        self.weights.iter().map(|w| w.len()).sum::<usize>()
            + self.biases.iter().map(|b| b.len()).sum::<usize>()
    }

    pub fn is_finite(&self) -> bool {
        self.weights.iter().all(|w| w.iter().all(|v| v.is_finite()))
            && self.biases.iter().all(|b| b.iter().all(|v| v.is_finite()))
    }

    fn check_input(&self, x: &Array2<f64>) -> Result<()> {
        if x.ncols() != self.input_dim() {
            return Err(Error::Usage(format!(
                "input has {} features, network expects {}",
                x.ncols(),
                self.input_dim()
            )));
        }
        Ok(())
    }

    fn trace(&self, x: &Array2<f64>) -> Trace {
        let mut pre = Vec::with_capacity(self.weights.len());
        let mut post: Vec<Array2<f64>> = Vec::with_capacity(self.weights.len());
        for (l, (w, b)) in self.weights.iter().zip(&self.biases).enumerate() {
            let input = if l == 0 { x } else { &post[l - 1] };
            let mut z = input.dot(&w.t());
            z += b;
            let act = self.spec.activation(l);
            let y = z.mapv(|v| act.apply(v));
            pre.push(z);
            post.push(y);
        }
        Trace { pre, post }
    }

    pub fn forward(&self, x: &[f64]) -> Result<Vec<f64>> {
        let batch = Array2::from_shape_vec((1, x.len()), x.to_vec())
            .map_err(|e| Error::Usage(e.to_string()))?;
        Ok(self.forward_batch(&batch)?.into_raw_vec_and_offset().0)
    }

    pub fn forward_batch(&self, x: &Array2<f64>) -> Result<Array2<f64>> {
        self.check_input(x)?;
        Ok(self.trace(x).post.pop().unwrap())
    }

    /// Gradients of `upstream . forward(x)` with respect to the parameters
    /// and the input.
    pub fn backward(&self, x: &[f64], upstream: &[f64]) -> Result<GradientBundle> {
        let xb = Array2::from_shape_vec((1, x.len()), x.to_vec())
            .map_err(|e| Error::Usage(e.to_string()))?;
        let ub = Array2::from_shape_vec((1, upstream.len()), upstream.to_vec())
            .map_err(|e| Error::Usage(e.to_string()))?;
        let (params, input) = self.backward_batch(&xb, &ub)?;
        Ok(GradientBundle {
            params,
            input: input.into_raw_vec_and_offset().0,
        })
    }

    /// Batched backward pass. Parameter gradients are summed over rows; input
    /// gradients are returned per row.
    pub fn backward_batch(
        &self,
        x: &Array2<f64>,
        upstream: &Array2<f64>,
    ) -> Result<(ParamGrads, Array2<f64>)> {
        self.check_input(x)?;
        if upstream.ncols() != self.output_dim() || upstream.nrows() != x.nrows() {
            return Err(Error::Usage(format!(
                "upstream gradient is {:?}, expected ({}, {})",
                upstream.dim(),
                x.nrows(),
                self.output_dim()
            )));
        }
        let trace = self.trace(x);
        Ok(self.backward_from_trace(x, &trace, upstream.clone()))
    }

    fn backward_from_trace(
        &self,
        x: &Array2<f64>,
        trace: &Trace,
        upstream: Array2<f64>,
    ) -> (ParamGrads, Array2<f64>) {
        let n = self.weights.len();
        let mut weights = Vec::with_capacity(n);
        let mut biases = Vec::with_capacity(n);
        let mut delta = upstream;
        for l in (0..n).rev() {
            let act = self.spec.activation(l);
            if act != Activation::Identity {
                Zip::from(&mut delta)
                    .and(&trace.pre[l])
                    .and(&trace.post[l])
                    .for_each(|d, &z, &y| *d *= act.derivative(z, y));
            }
            let input = if l == 0 { x } else { &trace.post[l - 1] };
            weights.push(delta.t().dot(input));
            biases.push(delta.sum_axis(Axis(0)));
            delta = delta.dot(&self.weights[l]);
        }
        weights.reverse();
        biases.reverse();
        (ParamGrads { weights, biases }, delta)
    }

    /// `params += sign * lr * grads`.
    pub fn apply_gradient_step(
        &mut self,
        grads: &ParamGrads,
        lr: f64,
        direction: Direction,
    ) -> Result<()> {
        self.check_grads(grads)?;
        let k = direction.sign() * lr;
        for (w, g) in self.weights.iter_mut().zip(&grads.weights) {
            w.scaled_add(k, g);
        }
        for (b, g) in self.biases.iter_mut().zip(&grads.biases) {
            b.scaled_add(k, g);
        }
        Ok(())
    }

    fn check_grads(&self, grads: &ParamGrads) -> Result<()> {
        let mine = ParamGrads::zeros(&self.spec);
        if !mine.same_shape(grads) {
            return Err(Error::Usage(
                "gradient shapes do not match the network".to_string(),
            ));
        }
        Ok(())
    }

    /// `self = tau * online + (1 - tau) * self`.
    pub fn soft_update(&mut self, online: &MlpParams, tau: f64) -> Result<()> {
        if self.spec != online.spec {
            return Err(Error::Usage(
                "soft update between networks of different shapes".to_string(),
            ));
        }
        if !(0.0..=1.0).contains(&tau) {
            return Err(Error::Usage(format!("tau must lie in [0, 1], got {tau}")));
        }
        let keep = 1.0 - tau;
        for (t, o) in self.weights.iter_mut().zip(&online.weights) {
            Zip::from(t).and(o).for_each(|t, &o| *t = tau * o + keep * *t);
        }
        for (t, o) in self.biases.iter_mut().zip(&online.biases) {
            Zip::from(t).and(o).for_each(|t, &o| *t = tau * o + keep * *t);
        }
        Ok(())
    }

    pub fn to_checkpoint(&self) -> MlpCheckpoint {
        MlpCheckpoint {
            format_version: CHECKPOINT_VERSION,
            spec: self.spec.clone(),
            weights: self.weights.iter().map(|w| w.iter().copied().collect()).collect(),
            biases: self.biases.iter().map(|b| b.to_vec()).collect(),
        }
    }

    pub fn from_checkpoint(ckpt: MlpCheckpoint) -> Result<Self> {
        if ckpt.format_version != CHECKPOINT_VERSION {
            return Err(Error::Config(format!(
                "unsupported network checkpoint version {}",
                ckpt.format_version
            )));
        }
        ckpt.spec.validate()?;
        let sizes = &ckpt.spec.layer_sizes;
        if ckpt.weights.len() != sizes.len() - 1 || ckpt.biases.len() != sizes.len() - 1 {
            return Err(Error::Config("checkpoint has the wrong number of layers".to_string()));
        }
        let mut weights = Vec::with_capacity(ckpt.weights.len());
        for (l, flat) in ckpt.weights.into_iter().enumerate() {
            let w = Array2::from_shape_vec((sizes[l + 1], sizes[l]), flat)
                .map_err(|e| Error::Config(format!("layer {l} weights: {e}")))?;
            weights.push(w);
        }
        let biases = ckpt.biases.into_iter().map(Array1::from_vec).collect();
        Self::from_parts(ckpt.spec, weights, biases)
    }

    pub fn save_json(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string(&self.to_checkpoint())
            .map_err(|e| Error::json("serializing network", e))?;
        std::fs::write(path, text).map_err(|e| Error::io(path, e))
    }

    pub fn load_json(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let ckpt: MlpCheckpoint =
            serde_json::from_str(&text).map_err(|e| Error::json(path.display().to_string(), e))?;
        Self::from_checkpoint(ckpt)
    }
}

/// On-disk form of [`MlpParams`]: layer matrices flattened row-major.
/// Floats are written in shortest round-trip decimal form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MlpCheckpoint {
    pub format_version: u32,
    pub spec: MlpSpec,
    pub weights: Vec<Vec<f64>>,
    pub biases: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum OptimizerKind {
    Sgd,
    Adam { beta1: f64, beta2: f64, epsilon: f64 },
}

impl OptimizerKind {
    pub const ADAM: OptimizerKind = OptimizerKind::Adam {
        beta1: 0.9,
        beta2: 0.999,
        epsilon: 1e-8,
    };
}

/// Stateful update rule for one network.
#[derive(Debug, Clone)]
pub struct Optimizer {
    kind: OptimizerKind,
    moments: Option<(ParamGrads, ParamGrads)>,
    steps: i32,
}

impl Optimizer {
    pub fn new(kind: OptimizerKind) -> Self {
        Optimizer {
            kind,
            moments: None,
            steps: 0,
        }
    }

    pub fn kind(&self) -> OptimizerKind {
        self.kind
    }

    pub fn step(
        &mut self,
        params: &mut MlpParams,
        grads: &ParamGrads,
        lr: f64,
        direction: Direction,
    ) -> Result<()> {
        match self.kind {
            OptimizerKind::Sgd => params.apply_gradient_step(grads, lr, direction),
            OptimizerKind::Adam {
                beta1,
                beta2,
                epsilon,
            } => {
                params.check_grads(grads)?;
                let (m, v) = self.moments.get_or_insert_with(|| {
                    (ParamGrads::zeros(&params.spec), ParamGrads::zeros(&params.spec))
                });
                self.steps = self.steps.saturating_add(1);
                let c1 = 1.0 - beta1.powi(self.steps);
                let c2 = 1.0 - beta2.powi(self.steps);
                let k = direction.sign() * lr;
                let update = |p: &mut f64, m: &mut f64, v: &mut f64, g: f64| {
                    *m = beta1 * *m + (1.0 - beta1) * g;
                    *v = beta2 * *v + (1.0 - beta2) * g * g;
                    *p += k * (*m / c1) / ((*v / c2).sqrt() + epsilon);
                };
                for l in 0..params.weights.len() {
                    Zip::from(&mut params.weights[l])
                        .and(&mut m.weights[l])
                        .and(&mut v.weights[l])
                        .and(&grads.weights[l])
                        .for_each(|p, m, v, &g| update(p, m, v, g));
                    Zip::from(&mut params.biases[l])
                        .and(&mut m.biases[l])
                        .and(&mut v.biases[l])
                        .and(&grads.biases[l])
                        .for_each(|p, m, v, &g| update(p, m, v, g));
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn scalar_linear(w: f64, b: f64) -> MlpParams {
        let spec = MlpSpec::new(vec![1, 1], Activation::Relu, Activation::Identity).unwrap();
        MlpParams::from_parts(spec, vec![array![[w]]], vec![array![b]]).unwrap()
    }

    #[test]
    fn zero_network_outputs_zero() {
        let spec =
            MlpSpec::with_hidden(3, &[4, 4], 2, Activation::Tanh, Activation::Identity).unwrap();
        let net = MlpParams::zeros(spec).unwrap();
        assert_eq!(net.forward(&[1.0, -2.0, 0.5]).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn single_linear_layer() {
        let net = scalar_linear(2.0, 1.0);
        assert_eq!(net.forward(&[3.0]).unwrap(), vec![7.0]);
        let g = net.backward(&[3.0], &[1.0]).unwrap();
        assert_eq!(g.params.weights[0], array![[3.0]]);
        assert_eq!(g.params.biases[0], array![1.0]);
        assert_eq!(g.input, vec![2.0]);
    }

    #[test]
    fn tanh_output_is_bounded() {
        let mut rng = rand::rng();
        let spec =
            MlpSpec::with_hidden(5, &[16, 16], 3, Activation::Tanh, Activation::Tanh).unwrap();
        let net = MlpParams::init(spec, &mut rng).unwrap();
        let y = net.forward(&[10.0, -3.0, 2.0, 0.0, 7.0]).unwrap();
        assert!(y.iter().all(|v| v.is_finite() && v.abs() < 1.0));
    }

    #[test]
    fn zero_upstream_gives_zero_gradients() {
        let mut rng = rand::rng();
        let spec =
            MlpSpec::with_hidden(3, &[8], 2, Activation::Relu, Activation::Tanh).unwrap();
        let net = MlpParams::init(spec, &mut rng).unwrap();
        let g = net.backward(&[0.1, 0.2, 0.3], &[0.0, 0.0]).unwrap();
        assert!(g.params.iter().all(|&v| v == 0.0));
        assert!(g.input.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn dimension_mismatch_is_usage_error() {
        let net = scalar_linear(1.0, 0.0);
        assert!(matches!(net.forward(&[1.0, 2.0]), Err(Error::Usage(_))));
        assert!(matches!(net.backward(&[1.0], &[1.0, 1.0]), Err(Error::Usage(_))));
    }

    #[test]
    fn gradient_steps() {
        let mut net = scalar_linear(1.0, 0.0);
        let mut g = ParamGrads::zeros(net.spec());
        let before = net.clone();
        net.apply_gradient_step(&g, 0.1, Direction::Ascent).unwrap();
        assert_eq!(net, before);

        g.weights[0][[0, 0]] = 2.0;
        net.apply_gradient_step(&g, 0.1, Direction::Ascent).unwrap();
        assert!((net.weights[0][[0, 0]] - 1.2).abs() < 1e-15);

        // Sequential steps compose in order.
        let mut g2 = ParamGrads::zeros(net.spec());
        g2.weights[0][[0, 0]] = -5.0;
        net.apply_gradient_step(&g2, 0.1, Direction::Descent).unwrap();
        let expected = (1.0 + 0.1 * 2.0) - 0.1 * -5.0;
        assert_eq!(net.weights[0][[0, 0]], expected);

        let other = MlpParams::zeros(
            MlpSpec::new(vec![2, 1], Activation::Relu, Activation::Identity).unwrap(),
        )
        .unwrap();
        let bad = ParamGrads::zeros(other.spec());
        assert!(net.apply_gradient_step(&bad, 0.1, Direction::Ascent).is_err());
    }

    #[test]
    fn soft_update_cases() {
        let online = scalar_linear(2.0, 2.0);
        let mut target = scalar_linear(0.0, 0.0);
        target.soft_update(&online, 0.5).unwrap();
        assert_eq!(target, scalar_linear(1.0, 1.0));
        target.soft_update(&online, 1.0).unwrap();
        assert_eq!(target, online);

        let mut target = scalar_linear(0.0, 0.0);
        let mut gap = 2.0;
        for _ in 0..200 {
            target.soft_update(&online, 0.01).unwrap();
            gap *= 0.99;
        }
        assert!((2.0 - target.weights[0][[0, 0]] - gap).abs() < 1e-12);

        let wide = MlpParams::zeros(
            MlpSpec::new(vec![2, 1], Activation::Relu, Activation::Identity).unwrap(),
        )
        .unwrap();
        assert!(target.soft_update(&wide, 0.5).is_err());
    }

    #[test]
    fn adam_first_step_moves_by_lr() {
        let mut net = scalar_linear(1.0, 0.0);
        let mut g = ParamGrads::zeros(net.spec());
        g.weights[0][[0, 0]] = 3.0;
        let mut opt = Optimizer::new(OptimizerKind::ADAM);
        opt.step(&mut net, &g, 0.01, Direction::Descent).unwrap();
        assert!((net.weights[0][[0, 0]] - 0.99).abs() < 1e-8);
        assert_eq!(net.biases[0][0], 0.0);
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(MlpSpec::new(vec![3], Activation::Relu, Activation::Identity).is_err());
        assert!(MlpSpec::new(vec![3, 0, 1], Activation::Relu, Activation::Identity).is_err());
        assert!(MlpSpec::new(vec![3, 1], Activation::Relu, Activation::Relu).is_err());
    }
}
