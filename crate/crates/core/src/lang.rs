//! Finite languages: relation symbols and symmetric partial function symbols.
//!
//! A function symbol `F` with domain arity `d` and range size `r` is
//! interpreted in a structure as a partial map from ordered `d`-tuples of
//! vertices to unordered `r`-element vertex sets.  An ordered language
//! additionally carries one distinguished binary relation holding the strict
//! linear order; it takes part in homomorphism and embedding conditions like
//! any other relation, which makes embeddings of ordered structures
//! automatically monotone.

use crate::error::{CoreError, Result};

pub type Vertex = u32;
pub type RelId = usize;
pub type FunId = usize;

/// Reserved name of the distinguished order relation.
pub const ORDER_REL_NAME: &str = "<";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RelSym {
    pub name: String,
    pub arity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunSym {
    pub name: String,
    /// Arity of the (ordered) domain tuples.
    pub dom_arity: usize,
    /// Size of the (unordered) image sets.
    pub range_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Language {
    rels: Vec<RelSym>,
    funs: Vec<FunSym>,
    /// Index into `rels` of the distinguished order relation, if any.
    order: Option<RelId>,
}

impl Language {
    pub fn new(rels: Vec<RelSym>, funs: Vec<FunSym>) -> Result<Self> {
        Self::build(rels, funs, false)
    }

    /// Language with the distinguished strict order relation appended.
    pub fn with_order(rels: Vec<RelSym>, funs: Vec<FunSym>) -> Result<Self> {
        Self::build(rels, funs, true)
    }

    fn build(mut rels: Vec<RelSym>, funs: Vec<FunSym>, ordered: bool) -> Result<Self> {
        let order = if ordered {
            rels.push(RelSym {
                name: ORDER_REL_NAME.to_string(),
                arity: 2,
            });
            Some(rels.len() - 1)
        } else {
            None
        };
        let lang = Language { rels, funs, order };
        let mut seen = std::collections::BTreeSet::new();
        for r in &lang.rels {
            if r.arity == 0 {
                return Err(CoreError::Invalid(format!("relation {} has arity 0", r.name)));
            }
            if r.name == ORDER_REL_NAME && lang.order.is_none() {
                return Err(CoreError::Invalid(format!(
                    "relation name {ORDER_REL_NAME} is reserved"
                )));
            }
            if !seen.insert(r.name.clone()) {
                return Err(CoreError::Invalid(format!("duplicate symbol {}", r.name)));
            }
        }
        for f in &lang.funs {
            if f.dom_arity == 0 || f.range_size == 0 {
                return Err(CoreError::Invalid(format!(
                    "function {} must have positive arities",
                    f.name
                )));
            }
            if f.name == ORDER_REL_NAME {
                return Err(CoreError::Invalid(format!(
                    "function name {ORDER_REL_NAME} is reserved"
                )));
            }
            if !seen.insert(f.name.clone()) {
                return Err(CoreError::Invalid(format!("duplicate symbol {}", f.name)));
            }
        }
        Ok(lang)
    }

    pub fn rels(&self) -> &[RelSym] {
        &self.rels
    }

    pub fn funs(&self) -> &[FunSym] {
        &self.funs
    }

    pub fn has_order(&self) -> bool {
        self.order.is_some()
    }

    pub fn order_rel(&self) -> Option<RelId> {
        self.order
    }

    /// Relation ids excluding the distinguished order relation.
    pub fn plain_rels(&self) -> impl Iterator<Item = RelId> + '_ {
        (0..self.rels.len()).filter(move |i| Some(*i) != self.order)
    }

    pub fn rel_id(&self, name: &str) -> Result<RelId> {
        self.rels
            .iter()
            .position(|r| r.name == name)
            .ok_or_else(|| CoreError::UnknownSymbol(name.to_string()))
    }

    pub fn fun_id(&self, name: &str) -> Result<FunId> {
        self.funs
            .iter()
            .position(|f| f.name == name)
            .ok_or_else(|| CoreError::UnknownSymbol(name.to_string()))
    }

    pub fn all_functions_unary(&self) -> bool {
        self.funs.iter().all(|f| f.dom_arity == 1)
    }

    /// The same language without the distinguished order relation.
    pub fn without_order(&self) -> Language {
        match self.order {
            None => self.clone(),
            Some(o) => {
                let rels = self
                    .rels
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != o)
                    .map(|(_, r)| r.clone())
                    .collect();
                Language {
                    rels,
                    funs: self.funs.clone(),
                    order: None,
                }
            }
        }
    }

    /// The same language with a distinguished order relation added.
    pub fn ordered(&self) -> Result<Language> {
        if self.has_order() {
            return Ok(self.clone());
        }
        Language::with_order(self.rels.clone(), self.funs.clone())
    }
}

/// Convenience constructors used throughout the test suites.
impl Language {
    pub fn relational(names_arities: &[(&str, usize)]) -> Language {
        Language::new(
            names_arities
                .iter()
                .map(|(n, a)| RelSym {
                    name: n.to_string(),
                    arity: *a,
                })
                .collect(),
            vec![],
        )
        .expect("valid language")
    }

    pub fn functional(names: &[(&str, usize, usize)]) -> Language {
        Language::new(
            vec![],
            names
                .iter()
                .map(|(n, d, r)| FunSym {
                    name: n.to_string(),
                    dom_arity: *d,
                    range_size: *r,
                })
                .collect(),
        )
        .expect("valid language")
    }

    pub fn mixed(rels: &[(&str, usize)], funs: &[(&str, usize, usize)]) -> Language {
        Language::new(
            rels.iter()
                .map(|(n, a)| RelSym {
                    name: n.to_string(),
                    arity: *a,
                })
                .collect(),
            funs.iter()
                .map(|(n, d, r)| FunSym {
                    name: n.to_string(),
                    dom_arity: *d,
                    range_size: *r,
                })
                .collect(),
        )
        .expect("valid language")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_relation_is_appended() {
        let l = Language::with_order(
            vec![RelSym {
                name: "R".into(),
                arity: 2,
            }],
            vec![],
        )
        .unwrap();
        assert!(l.has_order());
        assert_eq!(l.rels().len(), 2);
        assert_eq!(l.rels()[l.order_rel().unwrap()].name, ORDER_REL_NAME);
        assert_eq!(l.plain_rels().collect::<Vec<_>>(), vec![0]);
        let u = l.without_order();
        assert!(!u.has_order());
        assert_eq!(u.rels().len(), 1);
    }

    #[test]
    fn reserved_and_duplicate_names_rejected() {
        assert!(Language::new(
            vec![RelSym {
                name: "<".into(),
                arity: 2
            }],
            vec![]
        )
        .is_err());
        assert!(Language::new(
            vec![
                RelSym {
                    name: "R".into(),
                    arity: 1
                },
                RelSym {
                    name: "R".into(),
                    arity: 2
                }
            ],
            vec![]
        )
        .is_err());
    }
}
