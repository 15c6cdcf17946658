//! The golden Meyer set `{m + nφ : m + nφ′ ∈ [−1/2, 1/2)}`.

use qpkit::meyer::{enumerate_band, golden_comparability, meyer_density_check, Window};

fn main() {
    let band = enumerate_band(&Window::default(), 1000.0).unwrap();
    println!(
        "{} points with |(m, n)| <= 1000 in window {}",
        band.len(),
        band.window
    );
    let mut near: Vec<_> = band
        .points
        .iter()
        .filter(|p| p.physical.abs() < 6.0)
        .collect();
    near.sort_by(|a, b| a.physical.total_cmp(&b.physical));
    for p in near {
        println!(
            "  ({:>2}, {:>2})  λ = {:+.6}  λ′ = {:+.6}",
            p.m, p.n, p.physical, p.internal
        );
    }
    let density = meyer_density_check(&band, 20.0, 2000).unwrap();
    println!(
        "every interval of length 20 holds {}..={} points; min gap {:.6}",
        density.min_count, density.max_count, density.min_gap
    );
    let c = golden_comparability(&band).unwrap();
    println!(
        "|m + nφ| / |(m, n)| within [{:.6}, {:.6}]",
        c.c_low, c.c_high
    );
}
