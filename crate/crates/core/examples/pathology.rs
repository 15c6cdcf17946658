//! A bounded quasi-periodic function with spectrum in the golden Meyer set
//! whose parent is continuous but not C¹: the order-0 certificate series
//! settles while the order-1 series keeps growing.

use qpkit::analysis::derivative_series_probe;
use qpkit::meyer::{enumerate_band, pathological_parent, Window};

fn main() {
    let radii = [100.0, 1000.0, 10000.0];
    let band = enumerate_band(&Window::default(), radii[2]).unwrap();
    let parent = pathological_parent(&band);
    for order in [0, 1] {
        let probe = derivative_series_probe(&parent, order, &radii);
        println!(
            "order {order}: convergent {}, log-fit slope {:.3}",
            probe.convergent,
            probe.log_fit_slope.unwrap_or(f64::NAN)
        );
        for r in &probe.rows {
            println!(
                "    R = {:>6}  S = {:>12.6}  terms {:>6}",
                r.radius, r.partial_sum, r.terms
            );
        }
    }
}
