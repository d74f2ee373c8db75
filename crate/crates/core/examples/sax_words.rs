//! PAA reduction, SAX symbols and the word hash.

use phidd::parallel::Team;
use phidd::pipeline::{Params, Prepared};
use phidd::sax::{word_hash, Alphabet};
use phidd::series::TimeSeries;

fn main() -> phidd::Result<()> {
    let alphabet = Alphabet::new(4)?;
    println!("breakpoints for |A| = 4: {:?}", alphabet.breakpoints());
    for v in [-1.0, -0.6745, 0.0, 0.3, 2.0] {
        println!("  {v:>7} -> symbol {}", alphabet.symbol(v));
    }

    let values: Vec<f64> = (0..64).map(|t| (t as f64 * 0.3).sin() + 0.02 * t as f64).collect();
    let prepared = Prepared::build(&TimeSeries::new(values)?, Params::new(16), &Team::single())?;
    println!("\nfirst rows (n = 16, w = 4):");
    for i in 0..6 {
        let word = prepared.sax.row(i);
        let paa: Vec<String> = prepared.paa.row(i).iter().map(|v| format!("{v:6.3}")).collect();
        println!("  {i:>2}: paa [{}]  word {word:?}  hash {}", paa.join(" "), word_hash(word, &alphabet)?);
    }

    let words = &prepared.words;
    println!("\nword matrix: {} words; row 1 = {:?}, row 27 = {:?}, row 256 = {:?}", words.dict_size(), words.word(1), words.word(27), words.word(256));
    Ok(())
}
