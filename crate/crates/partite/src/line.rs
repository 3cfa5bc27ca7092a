//! Combinatorial lines over words of a fixed length, and the embedding of a
//! partite system into its power that a line induces.
//!
//! A word of length `n` over `t` letters picks one letter per position. A
//! line leaves a nonempty set of positions moving and fixes the rest; its
//! `t` words are read off by running one letter through the moving slots.

use fam_core::{Budget, CoreError, Meter, Result, Vertex, VertexMap};

use crate::power::Power;

/// `slots[i] = None` marks a moving position, `Some(j)` a position fixed to
/// letter `j`. At least one slot moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub slots: Vec<Option<usize>>,
}

impl Line {
    pub fn new(slots: Vec<Option<usize>>) -> Result<Line> {
        if slots.iter().all(|s| s.is_some()) {
            return Err(CoreError::Invalid("a line needs a moving position".into()));
        }
        Ok(Line { slots })
    }

    pub fn n(&self) -> usize {
        self.slots.len()
    }

    /// The word obtained by sending `letter` through the moving slots.
    pub fn word(&self, letter: usize) -> Vec<usize> {
        self.slots.iter().map(|s| s.unwrap_or(letter)).collect()
    }

    pub fn moving_positions(&self) -> Vec<usize> {
        (0..self.slots.len()).filter(|&i| self.slots[i].is_none()).collect()
    }
}

/// Number of lines over `t` letters in length `n`: every slot is moving or
/// one of `t` letters, minus the all-fixed assignments.
pub fn line_count(n: usize, t: usize) -> Option<u128> {
    let all = (t as u128 + 1).checked_pow(n as u32)?;
    let fixed = (t as u128).checked_pow(n as u32)?;
    Some(all - fixed)
}

/// Visits every line, moving-position masks ascending and fixed letters in
/// ascending mixed-radix order within a mask. `visit` returns `false` to
/// stop early.
pub fn for_each_line(
    n: usize,
    t: usize,
    budget: &Budget,
    mut visit: impl FnMut(&Line) -> bool,
) -> Result<()> {
    if n >= 64 {
        return Err(CoreError::Budget { what: "line positions", limit: 63 });
    }
    let mut meter = Meter::new(budget);
    for mask in 1u64..(1 << n) {
        let fixed: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) == 0).collect();
        let mut letters = vec![0usize; fixed.len()];
        loop {
            meter.step()?;
            let mut slots = vec![None; n];
            for (k, &pos) in fixed.iter().enumerate() {
                slots[pos] = Some(letters[k]);
            }
            if !visit(&Line { slots }) {
                return Ok(());
            }
            // Advance the letter vector; last position fastest.
            let mut k = fixed.len();
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                letters[k] += 1;
                if letters[k] < t {
                    break;
                }
                letters[k] = 0;
            }
            if letters.iter().all(|&l| l == 0) {
                break;
            }
        }
    }
    Ok(())
}

/// First line all of whose words share a color, in `for_each_line` order.
pub fn find_monochromatic_line(
    n: usize,
    t: usize,
    color: impl Fn(&[usize]) -> usize,
    budget: &Budget,
) -> Result<Option<Line>> {
    let mut found = None;
    for_each_line(n, t, budget, |line| {
        let c0 = color(&line.word(0));
        if (1..t).all(|j| color(&line.word(j)) == c0) {
            found = Some(line.clone());
            false
        } else {
            true
        }
    })?;
    Ok(found)
}

/// The transversal copy of the base inside the power picked out by a word:
/// part `p` contributes the function `i ↦ copies[word[i]][p]`.
///
/// `copies` are base copies of the power's source (one carrier vertex per
/// part, indexed by part), the alphabet of the word.
pub fn word_copy(power: &Power, copies: &[VertexMap], word: &[usize]) -> Result<VertexMap> {
    (0..power.source.base().n())
        .map(|p| {
            let coords: Vec<Vertex> = word.iter().map(|&w| copies[w][p]).collect();
            power.vertex(p, &coords)
        })
        .collect()
}

/// The embedding of the power's source into the power induced by a line:
/// a vertex `v` of part `p` goes to the function that is constantly `v` on
/// moving positions and follows copy `j` on positions fixed to letter `j`.
pub fn line_embedding(power: &Power, copies: &[VertexMap], line: &Line) -> Result<VertexMap> {
    if line.n() != power.n {
        return Err(CoreError::Invalid(format!(
            "line length {} does not match power exponent {}",
            line.n(),
            power.n
        )));
    }
    let src = &power.source;
    let mut out = Vec::with_capacity(src.carrier().n());
    for v in src.carrier().vertices() {
        let p = src.part_of(v);
        let coords: Vec<Vertex> = line
            .slots
            .iter()
            .map(|s| match s {
                None => v,
                Some(j) => copies[*j][p],
            })
            .collect();
        out.push(power.vertex(p, &coords)?);
    }
    Ok(out)
}
