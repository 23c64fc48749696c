//! Regenerates the classification table and checks it against
//! `tables/corollary_b.golden`.

use moduli_aut::moduli::classification_table;
use moduli_aut::rootdata::DEFAULT_MAX_RANK;

fn normalize(line: &str) -> String {
    line.split_whitespace().collect()
}

fn main() {
    let rows = classification_table(4, DEFAULT_MAX_RANK).expect("genus 4 is in range");
    let golden = include_str!("../tables/corollary_b.golden");
    let expected: Vec<String> = golden
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(normalize)
        .collect();
    let mut mismatches = 0;
    for (i, row) in rows.iter().enumerate() {
        let line = row.line();
        let ok = expected.get(i) == Some(&normalize(&line));
        mismatches += usize::from(!ok);
        println!("{} {line}", if ok { " " } else { "!" });
    }
    println!("{} rows, {} expected, {mismatches} mismatches", rows.len(), expected.len());
}
