//! The power of a partite system: parts become spaces of coordinate
//! functions, and tuples hold exactly when they hold coordinatewise.

use std::collections::{BTreeMap, BTreeSet};

use fam_core::{Budget, CoreError, Meter, Result, Structure, Vertex};
use itertools::Itertools;

use crate::system::PartiteSystem;

/// The `n`-th power of `source`, with the indexing needed to translate
/// between power vertices and tuples of source vertices.
///
/// Part `i` of the power consists of all functions from `{1..n}` to part `i`
/// of the source. A relation holds on power vertices iff it holds in the
/// source at every coordinate, and a function entry is defined iff every
/// coordinate tuple is, its image read off coordinatewise per part.
pub struct Power {
    pub system: PartiteSystem,
    pub source: PartiteSystem,
    pub n: usize,
    part_vertices: Vec<Vec<Vertex>>,
    rank_in_part: Vec<usize>,
    offsets: Vec<usize>,
}

impl Power {
    /// Power vertex for the function `i ↦ coords[i]` inside one part.
    pub fn vertex(&self, part: usize, coords: &[Vertex]) -> Result<Vertex> {
        if coords.len() != self.n {
            return Err(CoreError::Invalid(format!(
                "expected {} coordinates, got {}",
                self.n,
                coords.len()
            )));
        }
        let s = self.part_vertices[part].len();
        let mut rank = 0usize;
        for &v in coords {
            if self.source.part_of(v) != part {
                return Err(CoreError::Invalid(format!(
                    "coordinate {} lies outside part {}",
                    self.source.carrier().name(v),
                    part + 1
                )));
            }
            rank = rank * s + self.rank_in_part[v as usize];
        }
        Ok((self.offsets[part] + rank) as Vertex)
    }

    /// Inverse of `vertex`: the part and coordinate tuple of a power vertex.
    pub fn coords(&self, v: Vertex) -> (usize, Vec<Vertex>) {
        let part = self.system.part_of(v);
        let s = self.part_vertices[part].len();
        let mut rank = v as usize - self.offsets[part];
        let mut coords = vec![0 as Vertex; self.n];
        for slot in coords.iter_mut().rev() {
            *slot = self.part_vertices[part][rank % s];
            rank /= s;
        }
        (part, coords)
    }

    /// Source vertices of one part, ascending.
    pub fn part_list(&self, part: usize) -> &[Vertex] {
        &self.part_vertices[part]
    }
}

/// Builds the `n`-th power (`n ≥ 1`). The source must be a valid partite
/// system whose function images all have full declared size; coordinatewise
/// images are only well defined under that discipline.
pub fn partite_power(source: &PartiteSystem, n: usize, budget: &Budget) -> Result<Power> {
    if n == 0 {
        return Err(CoreError::Invalid("power exponent must be at least 1".into()));
    }
    source.validate()?;
    source.carrier().validate_exact_images()?;
    source.base().validate_exact_images()?;

    let base_n = source.base().n();
    let part_vertices: Vec<Vec<Vertex>> = (0..base_n).map(|p| source.part_vertices(p)).collect();
    let mut rank_in_part = vec![0usize; source.carrier().n()];
    for vs in &part_vertices {
        for (i, &v) in vs.iter().enumerate() {
            rank_in_part[v as usize] = i;
        }
    }

    let mut total: u128 = 0;
    for vs in &part_vertices {
        total += (vs.len() as u128).pow(n as u32);
    }
    budget.check_vertices(u64::try_from(total).map_err(|_| CoreError::Budget {
        what: "power carrier size",
        limit: budget.max_vertices,
    })?)?;

    let mut carrier = Structure::new(source.carrier().lang().clone());
    let mut part_of = Vec::with_capacity(total as usize);
    let mut offsets = Vec::with_capacity(base_n);
    for (p, vs) in part_vertices.iter().enumerate() {
        offsets.push(carrier.n());
        if vs.is_empty() {
            continue;
        }
        for combo in (0..n).map(|_| vs.iter()).multi_cartesian_product() {
            let name = format!(
                "({})",
                combo.iter().map(|&&v| source.carrier().name(v)).join(",")
            );
            carrier.add_vertex(name);
            part_of.push(p);
        }
    }

    let power = |part: usize, coords: &[Vertex]| -> Result<Vertex> {
        let s = part_vertices[part].len();
        let mut rank = 0usize;
        for &v in coords {
            rank = rank * s + rank_in_part[v as usize];
        }
        Ok((offsets[part] + rank) as Vertex)
    };

    let mut meter = Meter::new(budget);

    // Relations: group source tuples by their part signature; every
    // coordinate choice from one group yields a power tuple.
    for r in 0..source.carrier().lang().rels().len() {
        let mut groups: BTreeMap<Vec<usize>, Vec<&Vec<Vertex>>> = BTreeMap::new();
        for tuple in source.carrier().rel_tuples(r) {
            let sig: Vec<usize> = tuple.iter().map(|&v| source.part_of(v)).collect();
            groups.entry(sig).or_default().push(tuple);
        }
        for (sig, tuples) in groups {
            meter.step_by((tuples.len() as u64).saturating_pow(n as u32))?;
            for choice in (0..n).map(|_| 0..tuples.len()).multi_cartesian_product() {
                let mut c_tuple = Vec::with_capacity(sig.len());
                for (j, &p) in sig.iter().enumerate() {
                    let coords: Vec<Vertex> = choice.iter().map(|&i| tuples[i][j]).collect();
                    c_tuple.push(power(p, &coords)?);
                }
                carrier.add_rel(r, &c_tuple)?;
            }
        }
    }

    // Function entries: same grouping by domain signature. Transversal
    // images of full size hit the same set of parts across a group, so the
    // image of a power entry is read off per part.
    type Entry<'a> = (&'a Vec<Vertex>, BTreeMap<usize, Vertex>);
    for f in 0..source.carrier().lang().funs().len() {
        let mut groups: BTreeMap<Vec<usize>, Vec<Entry>> = BTreeMap::new();
        for (dom, img) in source.carrier().fun_entries(f) {
            let sig: Vec<usize> = dom.iter().map(|&v| source.part_of(v)).collect();
            let by_part: BTreeMap<usize, Vertex> =
                img.iter().map(|&v| (source.part_of(v), v)).collect();
            groups.entry(sig).or_default().push((dom, by_part));
        }
        for (sig, entries) in groups {
            let image_parts: Vec<usize> = entries[0].1.keys().copied().collect();
            for (_, by_part) in &entries {
                if by_part.keys().copied().collect::<Vec<_>>() != image_parts {
                    return Err(CoreError::Invalid(format!(
                        "function {} images hit different parts within one domain signature",
                        source.carrier().lang().funs()[f].name
                    )));
                }
            }
            meter.step_by((entries.len() as u64).saturating_pow(n as u32))?;
            for choice in (0..n).map(|_| 0..entries.len()).multi_cartesian_product() {
                let mut dom_vec = Vec::with_capacity(sig.len());
                for (j, &p) in sig.iter().enumerate() {
                    let coords: Vec<Vertex> =
                        choice.iter().map(|&i| entries[i].0[j]).collect();
                    dom_vec.push(power(p, &coords)?);
                }
                let mut img_set = BTreeSet::new();
                for &q in &image_parts {
                    let coords: Vec<Vertex> =
                        choice.iter().map(|&i| entries[i].1[&q]).collect();
                    img_set.insert(power(q, &coords)?);
                }
                carrier.set_fun(f, dom_vec, img_set)?;
            }
        }
    }

    let system = PartiteSystem::new(source.base().clone(), carrier, part_of)?;
    Ok(Power {
        system,
        source: source.clone(),
        n,
        part_vertices,
        rank_in_part,
        offsets,
    })
}
