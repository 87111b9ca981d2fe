use harmsurf_core::functionals;
use harmsurf_core::surfaces::builtins;
use harmsurf_core::QuadratureConfig;
use harmsurf_core::quadrature::TAU;

fn main() {
    let q = QuadratureConfig::default();
    let s = builtins::square();
    for k in 0..32 {
        let s0 = TAU * k as f64 / 32.0;
        match functionals::diameter_image_length(&s, s0, &q) {
            Ok(v) => println!("k={k} s0={s0:.4}: {v:.9}"),
            Err(e) => println!("k={k} s0={s0:.4}: ERROR {e}"),
        }
    }
}
