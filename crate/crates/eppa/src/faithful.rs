//! Certifying that the extension adds no new irreducible substructures:
//! every irreducible substructure of the extension is carried into the
//! designated copy by one of the extension's automorphisms.
//!
//! The route mirrors the construction.  An irreducible substructure must be
//! pairwise generic (tuples and entries are only ever placed on generic
//! sets), its roots must form a small set, and moving those roots into the
//! designated copy by a base automorphism induces a partial automorphism
//! onto rank-decorated valuations, which extends like any other.

use std::collections::BTreeSet;

use fam_core::{irreducible_closed_subsets, Budget, Meter, Result, Vertex};

use crate::base::PartialMap;
use crate::bigsets::apply_to_mask;
use crate::extend::extend_partial_auto;
use crate::extension::EppaExtension;
use crate::valuation::generic_valuations;

/// The outcome of the faithfulness certificate.
#[derive(Debug, Clone)]
pub struct FaithfulReport {
    /// Irreducible substructures examined.
    pub checked: usize,
    /// Among those, how many already sat inside the designated copy.
    pub inside: usize,
    /// Among the rest, how many were carried in by an extension automorphism.
    pub mapped: usize,
    /// Nonempty substructures skipped because they are free amalgams.
    pub skipped_reducible: usize,
    /// True when a size cap left some irreducible substructures unexamined.
    pub partial: bool,
    pub failures: Vec<String>,
}

impl FaithfulReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.inside + self.mapped == self.checked
    }
}

impl std::fmt::Display for FaithfulReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "irreducible substructures checked: {}", self.checked)?;
        writeln!(f, "already inside the designated copy: {}", self.inside)?;
        writeln!(f, "carried in by an automorphism: {}", self.mapped)?;
        writeln!(f, "free amalgams skipped: {}", self.skipped_reducible)?;
        if self.partial {
            writeln!(f, "note: the size cap left some substructures unexamined")?;
        }
        for fail in &self.failures {
            writeln!(f, "failure: {fail}")?;
        }
        write!(f, "overall: {}", if self.passed() { "pass" } else { "fail" })
    }
}

/// Checks every irreducible substructure of the extension (of at most `cap`
/// vertices, when given): each must lie in the designated copy or be carried
/// into it by an automorphism extending the root relocation.
pub fn certify_faithful(
    ext: &EppaExtension,
    cap: Option<usize>,
    budget: &Budget,
) -> Result<FaithfulReport> {
    let c = ext.c();
    let n = c.n();
    let irreducible = irreducible_closed_subsets(c, budget)?;

    // Independent count of nonempty substructures, for the skip tally.
    let mut meter = Meter::new(budget);
    let mut closed_nonempty = 0usize;
    for mask in 1u64..(1u64 << n) {
        meter.step()?;
        let set: BTreeSet<Vertex> = (0..n as u32).filter(|&v| mask & (1 << v) != 0).collect();
        if c.is_closed(&set) {
            closed_nonempty += 1;
        }
    }
    let skipped_reducible = closed_nonempty - irreducible.len();

    let mut checked = 0usize;
    let mut inside = 0usize;
    let mut mapped = 0usize;
    let mut partial = false;
    let mut failures = Vec::new();

    let a_n = ext.base().a_n();
    let outside_copy = !((1u32 << a_n) - 1);

    'sets: for d in &irreducible {
        if let Some(cap) = cap {
            if d.len() > cap {
                partial = true;
                continue;
            }
        }
        checked += 1;
        if d.iter().all(|&v| ext.phi_preimage(v).is_some()) {
            inside += 1;
            continue;
        }
        let members: Vec<usize> = d.iter().map(|&v| v as usize).collect();
        for (i, &x) in members.iter().enumerate() {
            for &y in &members[i + 1..] {
                if !generic_valuations(ext.val(x), ext.val(y), ext.base(), ext.family()) {
                    failures.push(format!(
                        "irreducible substructure {members:?} is not generic"
                    ));
                    continue 'sets;
                }
            }
        }
        let mut roots_mask = 0u32;
        for &x in &members {
            roots_mask |= 1 << ext.val(x).root_base();
        }
        let mut last_err = String::from("no base automorphism moves its roots into the copy");
        for g in ext.base().auts() {
            if apply_to_mask(g, roots_mask) & outside_copy != 0 {
                continue;
            }
            let p: PartialMap = members
                .iter()
                .map(|&x| {
                    let target = g[ext.val(x).root_base() as usize];
                    (x as Vertex, ext.phi()[target as usize])
                })
                .collect();
            match extend_partial_auto(ext, &p, budget) {
                Ok(ea) => {
                    debug_assert!(members
                        .iter()
                        .all(|&x| ext.phi_preimage(ea.phat[x]).is_some()));
                    mapped += 1;
                    continue 'sets;
                }
                Err(e) => last_err = e.to_string(),
            }
        }
        failures.push(format!(
            "irreducible substructure {members:?} could not be carried into the copy: {last_err}"
        ));
    }

    Ok(FaithfulReport {
        checked,
        inside,
        mapped,
        skipped_reducible,
        partial,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::build_eppa_extension;
    use fam_core::{Language, Structure};
    use std::sync::Arc;

    fn k2() -> Structure {
        let lang = Arc::new(Language::relational(&[("E", 2)]));
        let mut a = Structure::new(lang);
        a.add_vertex("a");
        a.add_vertex("b");
        a.add_rel(0, &[0, 1]).unwrap();
        a.add_rel(0, &[1, 0]).unwrap();
        a
    }

    fn fun_edge() -> Structure {
        let lang = Arc::new(Language::functional(&[("F", 1, 1)]));
        let mut a = Structure::new(lang);
        a.add_vertex("a");
        a.add_vertex("b");
        a.set_fun(0, vec![0], std::collections::BTreeSet::from([1])).unwrap();
        a
    }

    #[test]
    fn the_plain_edge_extension_is_faithful() {
        let ext = build_eppa_extension(&k2(), None, 2, &Budget::default()).unwrap();
        let report = certify_faithful(&ext, None, &Budget::default()).unwrap();
        // The extension is another edge: its irreducible substructures are
        // the two points and the edge, all inside the designated copy.
        assert!(report.passed(), "{report}");
        assert_eq!(report.checked, 3);
        assert_eq!(report.inside, 3);
        assert_eq!(report.mapped, 0);
        assert_eq!(report.skipped_reducible, 0);
        assert!(!report.partial);
    }

    #[test]
    fn the_function_edge_extension_is_faithful() {
        let ext = build_eppa_extension(&fun_edge(), None, 3, &Budget::default()).unwrap();
        let report = certify_faithful(&ext, None, &Budget::default()).unwrap();
        assert!(report.passed(), "{report}");
        // Six point valuations and six edge-point closures are irreducible;
        // the embedded input contributes one of each.
        assert_eq!(report.checked, 12);
        assert_eq!(report.inside, 2);
        assert_eq!(report.mapped, 10);
        // Substructures are free unions of the six edge-point partnerships
        // (each chosen empty, point-only, or whole): all but the twelve
        // irreducible ones are skipped.
        assert_eq!(report.skipped_reducible, 3usize.pow(6) - 1 - 12);
        assert!(!report.partial);
    }

    #[test]
    fn a_size_cap_marks_the_report_partial() {
        let ext = build_eppa_extension(&fun_edge(), None, 3, &Budget::default()).unwrap();
        let report = certify_faithful(&ext, Some(1), &Budget::default()).unwrap();
        assert!(report.partial);
        assert_eq!(report.checked, 6);
        assert!(report.passed(), "{report}");
    }
}
