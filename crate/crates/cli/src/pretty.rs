//! ω-power rendering of exponent-form vectors.

use mubkit::mub::{BasisVector, MubSet};
use num_integer::Integer;

const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

fn superscript(k: u32) -> String {
    k.to_string()
        .chars()
        .map(|c| SUPERSCRIPTS[c.to_digit(10).unwrap() as usize])
        .collect()
}

/// Smallest conductor carrying every phase exponent of the set.
pub fn reduced_conductor(s: &MubSet) -> u32 {
    let g = s
        .bases
        .iter()
        .flat_map(|b| b.vectors.iter())
        .filter_map(|v| match v {
            BasisVector::Phase(e) => Some(e.iter()),
            BasisVector::Unit(_) => None,
        })
        .flatten()
        .fold(s.conductor, |g, &k| g.gcd(&k));
    s.conductor / g
}

/// (negative, symbol) for ζ_n^k.
fn coefficient(k: u32, n: u32) -> (bool, String) {
    match n {
        1 => (false, String::new()),
        2 => (k == 1, String::new()),
        4 => match k {
            0 => (false, String::new()),
            1 => (false, "i".into()),
            2 => (true, String::new()),
            _ => (true, "i".into()),
        },
        _ => match k {
            0 => (false, String::new()),
            1 => (false, "ω".into()),
            _ => (false, format!("ω{}", superscript(k))),
        },
    }
}

fn sqrt_label(d: usize) -> String {
    let r = (d as f64).sqrt().round() as usize;
    if r * r == d {
        r.to_string()
    } else {
        format!("√{d}")
    }
}

pub fn render_vector(v: &BasisVector, d: usize, from: u32, to: u32) -> String {
    match v {
        BasisVector::Unit(x) => format!("|{x}⟩"),
        BasisVector::Phase(e) => {
            let mut out = String::from("(");
            for (x, &k) in e.iter().enumerate() {
                let (neg, sym) = coefficient(k / (from / to), to);
                match (x, neg) {
                    (0, true) => out.push('−'),
                    (0, false) => {}
                    (_, true) => out.push('−'),
                    (_, false) => out.push('+'),
                }
                out.push_str(&format!("{sym}|{x}⟩"));
            }
            out.push_str(&format!(")/{}", sqrt_label(d)));
            out
        }
    }
}

pub fn header(s: &MubSet) -> String {
    let n = reduced_conductor(s);
    let symbol = match n {
        1 | 2 => "real signs".to_string(),
        4 => "i = e^{2πi/4}".to_string(),
        _ => format!("ω = e^{{2πi/{n}}}"),
    };
    format!(
        "{} d={}, {} bases, conductor {n}: {symbol}",
        s.method,
        s.dimension,
        s.bases.len()
    )
}

pub fn render(s: &MubSet) -> String {
    let n = reduced_conductor(s);
    let mut out = header(s);
    out.push('\n');
    for b in &s.bases {
        out.push_str(&b.label);
        out.push('\n');
        for (i, v) in b.vectors.iter().enumerate() {
            out.push_str(&format!(
                "  {i}: {}\n",
                render_vector(v, s.dimension, b.conductor, n)
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use mubkit::mub::{mub_master, mub_w4};

    #[test]
    fn d3_listing() {
        let s = mub_master(3).unwrap();
        assert_eq!(reduced_conductor(&s), 3);
        let text = render(&s);
        assert!(text.contains("(ω²|0⟩+ω|1⟩+|2⟩)/√3"), "{text}");
        assert!(text.starts_with("master d=3, 4 bases, conductor 3: ω = e^{2πi/3}"));
    }

    #[test]
    fn small_conductors() {
        let s = mub_master(2).unwrap();
        assert_eq!(reduced_conductor(&s), 4);
        let text = render(&s);
        assert!(text.contains("(|0⟩+|1⟩)/√2"));
        assert!(text.contains("(−|0⟩+|1⟩)/√2"));
        assert!(text.contains("(−i|0⟩+|1⟩)/√2"));
        assert!(text.contains("|1⟩\n"));
        assert!(render(&mub_w4()).contains(")/2"));
        assert_eq!(superscript(12), "¹²");
    }
}
