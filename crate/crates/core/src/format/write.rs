use std::fmt::Write;

use crate::fibration::{Base, BrokenFibration, Chirality, DeclaredParity, LefschetzPiece, RoundCobordism};

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

fn write_level(out: &mut String, name: &str, l: &LefschetzPiece) {
    let _ = writeln!(out, "{name} {{");
    if l.fiber.is_connected() {
        let _ = writeln!(out, "  genus = {}", l.genus());
    } else {
        let gs: Vec<String> = l.fiber.components().iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "  components = [{}]", gs.join(", "));
    }
    if !l.cycles.is_empty() {
        let cs: Vec<String> = l
            .cycles
            .iter()
            .map(|c| {
                let q = quote(&c.word.to_string());
                match c.chirality {
                    Chirality::Positive => q,
                    Chirality::Negative => format!("-{q}"),
                }
            })
            .collect();
        let _ = writeln!(out, "  cycles = [{}]", cs.join(", "));
    }
    if let Some(m) = &l.monodromy {
        let _ = writeln!(out, "  monodromy = {m}");
    }
    out.push_str("}\n");
}

fn write_round(out: &mut String, r: &RoundCobordism) {
    let parity = match r.parity {
        DeclaredParity::Auto => "auto",
        DeclaredParity::Twisted => "twisted",
        DeclaredParity::Untwisted => "untwisted",
    };
    let _ = writeln!(out, "round {{");
    let _ = writeln!(out, "  gamma = {}", quote(&r.gamma.to_string()));
    let _ = writeln!(out, "  parity = {parity}");
    let _ = writeln!(out, "  framing = {}", r.framing);
    let _ = writeln!(out, "  separating = {}", r.separating);
    if let Some(g) = r.gluing {
        let _ = writeln!(out, "  gluing = {g}");
    }
    out.push_str("}\n");
}

/// Canonical text of a fibration: every block in a fixed order, `parse`
/// returns the same value.
pub fn serialize(f: &BrokenFibration) -> String {
    let mut out = String::new();
    let base = match f.base() {
        Base::Sphere => "sphere",
        Base::Torus => "torus",
    };
    let _ = writeln!(out, "blf {{");
    let _ = writeln!(out, "  base = {base}");
    let _ = writeln!(out, "  blowups = {}", f.blowups());
    let _ = writeln!(out, "  base_points = {}", f.base_points());
    out.push_str("}\n");

    let n = f.levels().len();
    for (i, level) in f.levels().iter().enumerate() {
        let name = if i + 1 == n {
            "higher"
        } else if i == 0 {
            "lower"
        } else {
            "middle"
        };
        write_level(&mut out, name, level);
        if let Some(r) = f.rounds().get(i) {
            write_round(&mut out, r);
        }
    }

    if !f.sections().is_empty() {
        let s: Vec<String> = f.sections().iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "sections {{\n  squares = [{}]\n}}", s.join(", "));
    }
    let d = f.declared();
    if d.sigma.is_some() || d.b_plus.is_some() || d.label.is_some() || d.form.is_some() {
        out.push_str("declared {\n");
        if let Some(s) = d.sigma {
            let _ = writeln!(out, "  sigma = {s}");
        }
        if let Some(b) = d.b_plus {
            let _ = writeln!(out, "  b_plus = {b}");
        }
        if let Some(l) = &d.label {
            let _ = writeln!(out, "  label = {}", quote(l));
        }
        if let Some(form) = d.form {
            let _ = writeln!(out, "  form = {form}");
        }
        out.push_str("}\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse;
    use crate::surgery::{connected_sum_model, example42_family, step_fibration};

    #[test]
    fn round_trips() {
        let c = connected_sum_model(&example42_family(-1), &step_fibration(1, 0)).unwrap();
        for f in [example42_family(3), step_fibration(2, -1), c] {
            let text = serialize(&f);
            let back = parse(&text).unwrap();
            assert_eq!(back, f, "{text}");
            assert_eq!(serialize(&back), text);
        }
    }

    #[test]
    fn quotes_labels() {
        assert_eq!(quote(r#"a"b\c"#), r#""a\"b\\c""#);
    }
}
