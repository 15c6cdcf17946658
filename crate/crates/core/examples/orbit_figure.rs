//! Writes the orbit of the origin under `x ↦ (x, √2x) mod 1` for `x ∈ [0, 40]`
//! as CSV, split into the line segments seen on the torus.
//!
//! ```text
//! cargo run --example orbit_figure > orbit.csv
//! ```

use qpkit::number_field::{FieldScalar, FrequencyMatrix};
use qpkit::torus::{orbit_segment, TorusPoint};

fn main() {
    let p =
        FrequencyMatrix::row(vec![FieldScalar::one(), FieldScalar::sqrt_of(2).unwrap()]).unwrap();
    let pts = orbit_segment(&p, &TorusPoint::origin(2), 0.0, 40.0, 4000).unwrap();
    println!("segment,y1,y2");
    let mut segment = 0;
    for (i, pt) in pts.iter().enumerate() {
        if i > 0
            && pt
                .coords()
                .iter()
                .zip(pts[i - 1].coords())
                .any(|(a, b)| (a - b).abs() > 0.5)
        {
            segment += 1;
        }
        println!("{segment},{},{}", pt.coords()[0], pt.coords()[1]);
    }
    eprintln!("{} points in {} segments", pts.len(), segment + 1);
}
