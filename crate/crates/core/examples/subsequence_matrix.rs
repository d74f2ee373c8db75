//! Z-normalized, padded subsequence layout.
//!
//! Every row is one window of the series, normalized on its own and padded
//! with zeros to a multiple of the vector width so rows start on aligned
//! boundaries. Padding never changes a distance.

use phidd::series::{padding, squared_distance, SubsequenceMatrix, TimeSeries};

fn main() -> phidd::Result<()> {
    let series = TimeSeries::new(vec![1.0, 3.0, 2.0, 5.0, 4.0, 4.0, 4.0, 4.0, 0.0, 6.0, 1.0])?;
    let n = 5;
    let m = SubsequenceMatrix::build(&series, n, 8)?;
    println!("{} rows of length {n}, pad {} (= padding({n}, 8) = {}), stride {}", m.rows(), m.pad(), padding(n, 8), m.stride());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|v| format!("{v:6.3}")).collect();
        println!("row {i}: [{}]", row.join(" "));
    }
    // row 3 covers 5 4 4 4 4 and row 4 is constant: the constant one is all zeros
    let a = squared_distance(m.row(0), m.row(6));
    let b: f64 = m.subsequence(0).iter().zip(m.subsequence(6)).map(|(x, y)| (x - y).powi(2)).sum();
    println!("d²(row 0, row 6) over the padded rows = {a:.12}, over the first n columns = {b:.12}");
    Ok(())
}
