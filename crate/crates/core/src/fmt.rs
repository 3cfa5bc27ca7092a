//! Line-oriented text format for structures.
//!
//! ```text
//! # comment
//! lang rel E 2          # relation symbol, arity
//! lang fun F 1 2        # function symbol, domain arity, image size
//! vertex a
//! vertex b
//! rel E a b
//! fun F a : b c         # domain tuple, colon, image set
//! order b a             # every vertex, least first; presence = ordered language
//! ```
//!
//! Language lines come first; vertex names are introduced before use.  An
//! `order` line (bare for the empty structure) marks the language as ordered.
//! Printing is deterministic and `parse ∘ to_text` is the identity.

use crate::error::{CoreError, Result};
use crate::lang::{FunSym, Language, RelSym, Vertex, ORDER_REL_NAME};
use crate::structure::Structure;
use std::sync::Arc;

fn err(line: usize, msg: impl Into<String>) -> CoreError {
    CoreError::Parse {
        line,
        msg: msg.into(),
    }
}

fn at(line: usize) -> impl Fn(CoreError) -> CoreError {
    move |e| err(line, e.to_string())
}

/// Parses numbered raw lines (comments and blanks are skipped here), so
/// callers embedding structures in larger files can route lines selectively.
pub fn parse_numbered<'a>(lines: impl Iterator<Item = (usize, &'a str)>) -> Result<Structure> {
    let mut rels: Vec<RelSym> = Vec::new();
    let mut funs: Vec<FunSym> = Vec::new();
    let mut body: Vec<(usize, Vec<&str>)> = Vec::new();
    let mut lang_done = false;

    for (no, raw) in lines {
        let stripped = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let toks: Vec<&str> = stripped.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        if toks[0] == "lang" {
            if lang_done {
                return Err(err(no, "language lines must precede structure lines"));
            }
            match toks.get(1).copied() {
                Some("rel") => {
                    let &[name, arity] = &toks[2..] else {
                        return Err(err(no, "expected: lang rel NAME ARITY"));
                    };
                    let arity: usize =
                        arity.parse().map_err(|_| err(no, "arity must be a number"))?;
                    rels.push(RelSym {
                        name: name.to_string(),
                        arity,
                    });
                }
                Some("fun") => {
                    let &[name, d, r] = &toks[2..] else {
                        return Err(err(no, "expected: lang fun NAME DOM_ARITY IMG_SIZE"));
                    };
                    let dom_arity = d.parse().map_err(|_| err(no, "domain arity must be a number"))?;
                    let range_size = r.parse().map_err(|_| err(no, "image size must be a number"))?;
                    funs.push(FunSym {
                        name: name.to_string(),
                        dom_arity,
                        range_size,
                    });
                }
                _ => return Err(err(no, "expected: lang rel | lang fun")),
            }
        } else {
            lang_done = true;
            body.push((no, toks));
        }
    }

    // An `order` line anywhere in the body marks the language as ordered.
    let ordered = body.iter().any(|(_, toks)| toks[0] == "order");
    let lang = if ordered {
        Language::with_order(rels, funs)
    } else {
        Language::new(rels, funs)
    }
    .map_err(|e| err(0, e.to_string()))?;
    let lang = Arc::new(lang);
    let mut s = Structure::new(lang.clone());

    for (no, toks) in body {
        match toks[0] {
            "vertex" => {
                let &[name] = &toks[1..] else {
                    return Err(err(no, "expected: vertex NAME"));
                };
                if name == ":" {
                    return Err(err(no, "`:` is not a legal vertex name"));
                }
                if s.vertex_by_name(name).is_ok() {
                    return Err(err(no, format!("duplicate vertex `{name}`")));
                }
                s.add_vertex(name);
            }
            "rel" => {
                let Some(&name) = toks.get(1) else {
                    return Err(err(no, "expected: rel NAME v1 v2 ..."));
                };
                if name == ORDER_REL_NAME {
                    return Err(err(no, "give the order with an `order` line"));
                }
                let r = lang.rel_id(name).map_err(at(no))?;
                let tuple: Vec<Vertex> = toks[2..]
                    .iter()
                    .map(|v| s.vertex_by_name(v))
                    .collect::<Result<_>>()
                    .map_err(at(no))?;
                s.add_rel(r, &tuple).map_err(at(no))?;
            }
            "fun" => {
                let Some(&name) = toks.get(1) else {
                    return Err(err(no, "expected: fun NAME d1 ... : i1 ..."));
                };
                let f = lang.fun_id(name).map_err(at(no))?;
                let Some(colon) = toks.iter().position(|&t| t == ":") else {
                    return Err(err(no, "missing `:` between domain and image"));
                };
                let dom: Vec<Vertex> = toks[2..colon]
                    .iter()
                    .map(|v| s.vertex_by_name(v))
                    .collect::<Result<_>>()
                    .map_err(at(no))?;
                let img = toks[colon + 1..]
                    .iter()
                    .map(|v| s.vertex_by_name(v))
                    .collect::<Result<_>>()
                    .map_err(at(no))?;
                s.set_fun(f, dom, img).map_err(at(no))?;
            }
            "order" => {
                let seq: Vec<Vertex> = toks[1..]
                    .iter()
                    .map(|v| s.vertex_by_name(v))
                    .collect::<Result<_>>()
                    .map_err(at(no))?;
                s.set_order(&seq).map_err(at(no))?;
            }
            other => return Err(err(no, format!("unknown directive `{other}`"))),
        }
    }

    s.validate()?;
    Ok(s)
}

pub fn parse(text: &str) -> Result<Structure> {
    parse_numbered(text.lines().enumerate().map(|(i, l)| (i + 1, l)))
}

fn checked_name(s: &Structure, v: Vertex) -> Result<&str> {
    let name = s.name(v);
    if name.is_empty()
        || name == ":"
        || name.contains(|c: char| c.is_whitespace())
        || name.contains('#')
    {
        return Err(CoreError::Invalid(format!(
            "vertex name `{name}` does not survive the text format"
        )));
    }
    Ok(name)
}

pub fn to_text(s: &Structure) -> Result<String> {
    use std::fmt::Write;
    let mut out = String::new();
    let lang = s.lang();
    for r in lang.plain_rels() {
        let sym = &lang.rels()[r];
        writeln!(out, "lang rel {} {}", sym.name, sym.arity).unwrap();
    }
    for f in lang.funs() {
        writeln!(out, "lang fun {} {} {}", f.name, f.dom_arity, f.range_size).unwrap();
    }
    for v in s.vertices() {
        writeln!(out, "vertex {}", checked_name(s, v)?).unwrap();
    }
    for r in lang.plain_rels() {
        for t in s.rel_tuples(r) {
            let names: Vec<&str> = t.iter().map(|&v| s.name(v)).collect();
            writeln!(out, "rel {} {}", lang.rels()[r].name, names.join(" ")).unwrap();
        }
    }
    for f in 0..lang.funs().len() {
        for (dom, img) in s.fun_entries(f) {
            let d: Vec<&str> = dom.iter().map(|&v| s.name(v)).collect();
            let i: Vec<&str> = img.iter().map(|&v| s.name(v)).collect();
            writeln!(
                out,
                "fun {} {} : {}",
                lang.funs()[f].name,
                d.join(" "),
                i.join(" ")
            )
            .unwrap();
        }
    }
    if lang.has_order() {
        let seq = s.order_sequence()?;
        let names: Vec<&str> = seq.iter().map(|&v| s.name(v)).collect();
        if names.is_empty() {
            writeln!(out, "order").unwrap();
        } else {
            writeln!(out, "order {}", names.join(" ")).unwrap();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# a structure with one edge and two function entries
lang rel E 2
lang fun F 1 1
vertex a
vertex b
vertex c
vertex d
rel E a b
fun F a : c
fun F b : d
order d c b a
";

    #[test]
    fn round_trip_is_exact() {
        let s = parse(SAMPLE).unwrap();
        assert_eq!(s.n(), 4);
        assert!(s.lang().has_order());
        assert_eq!(s.order_sequence().unwrap(), vec![3, 2, 1, 0]);
        let printed = to_text(&s).unwrap();
        let again = parse(&printed).unwrap();
        assert_eq!(s, again);
        assert_eq!(to_text(&again).unwrap(), printed);
    }

    #[test]
    fn empty_and_language_only_structures_round_trip() {
        let s = parse("lang rel E 2\n").unwrap();
        assert_eq!(s.n(), 0);
        assert!(!s.lang().has_order());
        let t = to_text(&s).unwrap();
        assert_eq!(parse(&t).unwrap(), s);
        // A bare order line marks the empty structure's language as ordered.
        let o = parse("order\n").unwrap();
        assert!(o.lang().has_order());
        assert_eq!(parse(&to_text(&o).unwrap()).unwrap(), o);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "lang rel E 2\nvertex a\nvertex b\nrel E a\n";
        match parse(bad) {
            Err(CoreError::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected arity parse error, got {other:?}"),
        }
        let unknown = "lang rel E 2\nvertex a\nrel Q a a\n";
        assert!(matches!(parse(unknown), Err(CoreError::Parse { line: 3, .. })));
        let dup = "vertex a\nvertex a\n";
        assert!(matches!(parse(dup), Err(CoreError::Parse { line: 2, .. })));
        let late = "vertex a\nlang rel E 2\n";
        assert!(matches!(parse(late), Err(CoreError::Parse { line: 2, .. })));
    }

    #[test]
    fn order_must_cover_all_vertices() {
        let partial = "vertex a\nvertex b\nvertex c\norder a b\n";
        assert!(parse(partial).is_err());
        let full = "vertex a\nvertex b\nvertex c\norder c a b\n";
        let s = parse(full).unwrap();
        assert_eq!(s.order_sequence().unwrap(), vec![2, 0, 1]);
    }
}
