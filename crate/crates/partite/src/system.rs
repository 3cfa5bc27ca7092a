//! Partite systems: a carrier structure whose vertices are sorted into parts
//! indexed by the vertices of a base structure.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use fam_core::{
    fmt as sfmt, for_each_map, is_homomorphism, Budget, CoreError, MapKind, Result, Search,
    Structure, Vertex, VertexMap,
};

/// A structure `carrier` split into parts indexed by the vertices of `base`,
/// over one shared unordered language.
///
/// Three laws make the split a partite system:
/// 1. sending each vertex to its part index is a homomorphism onto the base;
/// 2. no relation tuple contains two distinct vertices from the same part;
/// 3. no function entry (domain and image together) contains two distinct
///    vertices from the same part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartiteSystem {
    base: Structure,
    carrier: Structure,
    part_of: Vec<usize>,
}

impl PartiteSystem {
    /// Builds a system and checks all three partite laws.
    pub fn new(base: Structure, carrier: Structure, part_of: Vec<usize>) -> Result<Self> {
        let sys = Self::raw(base, carrier, part_of)?;
        sys.validate()?;
        Ok(sys)
    }

    /// Builds a system checking only shape (matching language, part indices in
    /// range). The partite laws themselves are left to `validate`, so this is
    /// the entry point for deliberately broken inputs in tests.
    pub fn raw(base: Structure, carrier: Structure, part_of: Vec<usize>) -> Result<Self> {
        if base.lang() != carrier.lang() {
            return Err(CoreError::LanguageMismatch);
        }
        if base.lang().has_order() {
            return Err(CoreError::Invalid(
                "partite systems are built over unordered languages".into(),
            ));
        }
        if part_of.len() != carrier.n() {
            return Err(CoreError::Invalid(format!(
                "part map covers {} vertices but the carrier has {}",
                part_of.len(),
                carrier.n()
            )));
        }
        if let Some(&bad) = part_of.iter().find(|&&p| p >= base.n()) {
            return Err(CoreError::Invalid(format!(
                "part index {bad} out of range for a base with {} vertices",
                base.n()
            )));
        }
        Ok(Self { base, carrier, part_of })
    }

    /// Reads the base itself as a system: every vertex sits alone in its own
    /// part. Such one-vertex-per-part systems are called transversal.
    pub fn from_base(base: &Structure) -> Self {
        let part_of = (0..base.n()).collect();
        Self { base: base.clone(), carrier: base.clone(), part_of }
    }

    pub fn base(&self) -> &Structure {
        &self.base
    }

    pub fn carrier(&self) -> &Structure {
        &self.carrier
    }

    /// Part index of a carrier vertex.
    pub fn part_of(&self, v: Vertex) -> usize {
        self.part_of[v as usize]
    }

    pub fn part_map(&self) -> &[usize] {
        &self.part_of
    }

    /// Vertices of one part, ascending.
    pub fn part_vertices(&self, part: usize) -> Vec<Vertex> {
        self.carrier
            .vertices()
            .filter(|&v| self.part_of[v as usize] == part)
            .collect()
    }

    /// The projection onto the base as a vertex map on the carrier.
    pub fn projection(&self) -> VertexMap {
        self.part_of.iter().map(|&p| p as Vertex).collect()
    }

    /// True when every part holds at most one vertex.
    pub fn is_transversal(&self) -> bool {
        let mut seen = vec![false; self.base.n()];
        for &p in &self.part_of {
            if seen[p] {
                return false;
            }
            seen[p] = true;
        }
        true
    }

    /// Checks the three partite laws, reporting the first violation.
    pub fn validate(&self) -> Result<()> {
        self.carrier.validate()?;
        self.base.validate()?;
        let proj = self.projection();
        if !is_homomorphism(&self.carrier, &self.base, &proj)? {
            return Err(CoreError::Invalid(
                "projection onto parts is not a homomorphism to the base".into(),
            ));
        }
        for (rel, _) in self.carrier.lang().rels().iter().enumerate() {
            for tuple in self.carrier.rel_tuples(rel) {
                if let Some(part) = self.crowded_part(tuple.iter().copied()) {
                    return Err(CoreError::Invalid(format!(
                        "relation {} tuple meets part {} twice",
                        self.carrier.lang().rels()[rel].name,
                        part + 1
                    )));
                }
            }
        }
        for (fun, _) in self.carrier.lang().funs().iter().enumerate() {
            for (dom, img) in self.carrier.fun_entries(fun) {
                if let Some(part) = self.crowded_part(dom.iter().chain(img.iter()).copied()) {
                    return Err(CoreError::Invalid(format!(
                        "function {} entry meets part {} twice",
                        self.carrier.lang().funs()[fun].name,
                        part + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// First part hit by two distinct vertices of `vs`, if any.
    fn crowded_part(&self, vs: impl IntoIterator<Item = Vertex>) -> Option<usize> {
        let mut by_part: Vec<Option<Vertex>> = vec![None; self.base.n()];
        for v in vs {
            let p = self.part_of[v as usize];
            match by_part[p] {
                Some(w) if w != v => return Some(p),
                _ => by_part[p] = Some(v),
            }
        }
        None
    }

    /// Part-preserving embeddings of `other`'s carrier into this carrier.
    /// Both systems must share the same base.
    pub fn embeddings_from(&self, other: &Self, budget: &Budget) -> Result<Vec<VertexMap>> {
        if self.base != other.base {
            return Err(CoreError::LanguageMismatch);
        }
        let keep = |s: Vertex, t: Vertex| other.part_of[s as usize] == self.part_of[t as usize];
        let search = Search::new(MapKind::Embedding, budget).with_candidate(&keep);
        let mut out = Vec::new();
        for_each_map(other.carrier(), self.carrier(), &search, |f| {
            out.push(f.clone());
            true
        })?;
        Ok(out)
    }

    /// Copies of the base inside the carrier: part-preserving embeddings of
    /// the base, reported as one carrier vertex per part (index = part).
    /// Ascending lexicographic order.
    pub fn base_copies(&self, budget: &Budget) -> Result<Vec<VertexMap>> {
        self.embeddings_from(&Self::from_base(&self.base), budget)
    }

    /// Subsystem induced on a set of carrier vertices. The set must be closed
    /// under the carrier's functions. Returns the system plus the map telling
    /// where each old vertex went.
    pub fn induced(&self, set: &BTreeSet<Vertex>) -> Result<(Self, Vec<Vertex>)> {
        let (sub, old_of_new) = self.carrier.induced(set)?;
        let part_of = old_of_new.iter().map(|&v| self.part_of[v as usize]).collect();
        Ok((
            Self { base: self.base.clone(), carrier: sub, part_of },
            old_of_new,
        ))
    }

    /// Serializes as carrier text plus one `part i v1 v2 ...` line per
    /// nonempty part (1-based part indices).
    pub fn to_text(&self) -> Result<String> {
        let mut out = sfmt::to_text(&self.carrier)?;
        for part in 0..self.base.n() {
            let vs = self.part_vertices(part);
            if vs.is_empty() {
                continue;
            }
            let _ = write!(out, "part {}", part + 1);
            for v in vs {
                let _ = write!(out, " {}", self.carrier.name(v));
            }
            out.push('\n');
        }
        Ok(out)
    }

    /// Parses carrier text extended with `part` lines, against a given base.
    /// Every carrier vertex must be assigned to exactly one part.
    pub fn parse(text: &str, base: &Structure) -> Result<Self> {
        let mut part_lines = Vec::new();
        let carrier_lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(no, line)| {
            let body = line.split('#').next().unwrap_or("");
            if body.split_whitespace().next() == Some("part") {
                part_lines.push((*no, body.to_string()));
                false
            } else {
                true
            }
        });
        let carrier = sfmt::parse_numbered(carrier_lines)?;
        let mut part_of: Vec<Option<usize>> = vec![None; carrier.n()];
        for (no, line) in part_lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let err = |msg: String| CoreError::Parse { line: no, msg };
            let &[_, idx, ref names @ ..] = &toks[..] else {
                return Err(err("expected `part INDEX NAME...`".into()));
            };
            let idx: usize = idx
                .parse()
                .map_err(|_| err(format!("bad part index `{idx}`")))?;
            if idx == 0 || idx > base.n() {
                return Err(err(format!(
                    "part index {idx} out of range 1..={}",
                    base.n()
                )));
            }
            for name in names {
                let v = carrier.vertex_by_name(name)?;
                if part_of[v as usize].replace(idx - 1).is_some() {
                    return Err(err(format!("vertex {name} assigned to two parts")));
                }
            }
        }
        let part_of = part_of
            .into_iter()
            .enumerate()
            .map(|(v, p)| {
                p.ok_or_else(|| {
                    CoreError::Invalid(format!("vertex {} has no part", carrier.name(v as Vertex)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(base.clone(), carrier, part_of)
    }
}
