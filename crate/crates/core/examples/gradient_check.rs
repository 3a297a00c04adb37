//! Compares analytic MLP gradients with central differences.

use pfac::approximator::{Activation, MlpParams, MlpSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> pfac::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let spec = MlpSpec::with_hidden(4, &[8, 8], 2, Activation::Tanh, Activation::Tanh)?;
    let net = MlpParams::init(spec, &mut rng)?;
    let x = [0.3, -0.7, 0.1, 0.9];
    let upstream = [1.0, -0.5];
    let objective = |n: &MlpParams| -> pfac::Result<f64> {
        Ok(n.forward(&x)?.iter().zip(upstream).map(|(y, u)| y * u).sum())
    };

    let grads = net.backward(&x, &upstream)?;
    let h = 1e-6;
    let mut worst = 0.0f64;
    for l in 0..net.weights.len() {
        let cols = net.weights[l].ncols();
        for idx in 0..net.weights[l].len() {
            let (r, c) = (idx / cols, idx % cols);
            let mut plus = net.clone();
            plus.weights[l][[r, c]] += h;
            let mut minus = net.clone();
            minus.weights[l][[r, c]] -= h;
            let fd = (objective(&plus)? - objective(&minus)?) / (2.0 * h);
            let g = grads.params.weights[l][[r, c]];
            worst = worst.max((g - fd).abs() / (g.abs() + fd.abs()).max(1e-8));
        }
    }
    println!("{} parameters, worst relative error {worst:.2e}", net.num_params());
    println!("input gradient {:?}", grads.input);
    Ok(())
}
