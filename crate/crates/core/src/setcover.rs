//! Set Cover instances, the two kernelization rules, and exact / greedy
//! cover solvers.

use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoverError {
    #[error("set {set} contains item {item}, but there are only {eta} items")]
    ItemOutOfRange { set: usize, item: usize, eta: usize },
    #[error("item {0} is not contained in any set")]
    Uncoverable(usize),
    #[error("set index {0} is out of range")]
    SetIndex(usize),
    #[error("{given} names for {h} sets")]
    NameCount { given: usize, h: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Items `0..eta` and a list of subsets whose union is every item.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct SetCoverInstance {
    eta: usize,
    sets: Vec<Vec<usize>>,
    names: Option<Vec<String>>,
}

impl SetCoverInstance {
    pub fn new(eta: usize, sets: Vec<Vec<usize>>) -> Result<Self, CoverError> {
        let mut sets = sets;
        let mut covered = FixedBitSet::with_capacity(eta);
        for (j, s) in sets.iter_mut().enumerate() {
            s.sort_unstable();
            s.dedup();
            if let Some(&item) = s.iter().find(|&&i| i >= eta) {
                return Err(CoverError::ItemOutOfRange { set: j, item, eta });
            }
            covered.extend(s.iter().copied());
        }
        if let Some(item) = covered.zeroes().next() {
            return Err(CoverError::Uncoverable(item));
        }
        Ok(SetCoverInstance {
            eta,
            sets,
            names: None,
        })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, CoverError> {
        if names.len() != self.sets.len() {
            return Err(CoverError::NameCount {
                given: names.len(),
                h: self.sets.len(),
            });
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn eta(&self) -> usize {
        self.eta
    }

    pub fn h(&self) -> usize {
        self.sets.len()
    }

    /// `eta + h`.
    pub fn size(&self) -> usize {
        self.eta + self.sets.len()
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn set(&self, j: usize) -> &[usize] {
        &self.sets[j]
    }

    pub fn contains(&self, j: usize, item: usize) -> bool {
        self.sets[j].binary_search(&item).is_ok()
    }

    /// Display label of set `j`; defaults to the 1-based `S{j+1}`.
    pub fn name(&self, j: usize) -> String {
        match &self.names {
            Some(names) => names[j].clone(),
            None => format!("S{}", j + 1),
        }
    }

    /// Indices of the sets containing `item`, ascending.
    pub fn sets_containing(&self, item: usize) -> Vec<usize> {
        (0..self.h()).filter(|&j| self.contains(j, item)).collect()
    }

    /// Every set has at least two items, every item is in at least two
    /// sets, and there are at least two sets.
    pub fn is_normalized(&self) -> bool {
        self.h() >= 2
            && self.sets.iter().all(|s| s.len() >= 2)
            && (0..self.eta).all(|i| self.sets_containing(i).len() >= 2)
    }

    pub fn has_distinct_sets(&self) -> bool {
        let mut sorted = self.sets.clone();
        sorted.sort();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    fn bitsets(&self) -> Vec<FixedBitSet> {
        self.sets
            .iter()
            .map(|s| {
                let mut b = FixedBitSet::with_capacity(self.eta);
                b.extend(s.iter().copied());
                b
            })
            .collect()
    }

    /// Text format: header `eta h`, then exactly `h` lines of item ids, one
    /// per set (a blank line is an empty set). `#` lines are comments.
    pub fn parse(text: &str) -> Result<Self, CoverError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.starts_with('#'))
            .skip_while(|(_, l)| l.is_empty());
        let (hline, header) = lines.next().ok_or(CoverError::Parse {
            line: 0,
            msg: "missing `eta h` header".into(),
        })?;
        let head = parse_ids(hline, header)?;
        let [eta, h] = head[..] else {
            return Err(CoverError::Parse {
                line: hline,
                msg: "header must be `eta h`".into(),
            });
        };
        let body: Vec<(usize, &str)> = lines.collect();
        let used = body.iter().rposition(|(_, l)| !l.is_empty()).map_or(0, |p| p + 1);
        if used > h || body.len() < h {
            return Err(CoverError::Parse {
                line: hline,
                msg: format!("header declares {h} sets, found {}", used.max(body.len().min(h))),
            });
        }
        let sets = body[..h]
            .iter()
            .map(|&(line, l)| parse_ids(line, l))
            .collect::<Result<Vec<_>, _>>()?;
        SetCoverInstance::new(eta, sets)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.eta, self.h());
        for s in &self.sets {
            let line: Vec<String> = s.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}

fn parse_ids(line: usize, text: &str) -> Result<Vec<usize>, CoverError> {
    text.split_whitespace()
        .map(|t| {
            t.parse().map_err(|_| CoverError::Parse {
                line,
                msg: format!("`{t}` is not a non-negative integer"),
            })
        })
        .collect()
}

/// True iff the chosen sets cover every item.
pub fn validate_cover(inst: &SetCoverInstance, chosen: &[usize]) -> Result<bool, CoverError> {
    let mut covered = FixedBitSet::with_capacity(inst.eta());
    for &j in chosen {
        if j >= inst.h() {
            return Err(CoverError::SetIndex(j));
        }
        covered.extend(inst.set(j).iter().copied());
    }
    Ok(covered.is_full())
}

/// Result of kernelizing an instance.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct NormalizedInstance {
    /// `None` when the rules covered every item.
    pub residual: Option<SetCoverInstance>,
    /// Original indices of sets that every optimal solution may contain.
    pub forced: Vec<usize>,
    /// Residual item id -> original item id.
    pub item_map: Vec<usize>,
    /// Residual set index -> original set index.
    pub set_map: Vec<usize>,
}

impl NormalizedInstance {
    pub fn is_solved(&self) -> bool {
        self.residual.is_none()
    }

    /// Maps a cover of the residual instance back to original indices and
    /// adds the forced sets.
    pub fn lift_cover(&self, residual_cover: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .forced
            .iter()
            .copied()
            .chain(residual_cover.iter().map(|&j| self.set_map[j]))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Repeatedly applies the first applicable rule:
///
/// 1. the lowest item contained in exactly one live set forces that set;
///    the set and every item it contains are removed;
/// 2. the lowest live set with at most one live item is removed.
pub fn normalize(inst: &SetCoverInstance) -> NormalizedInstance {
    let mut item_alive = vec![true; inst.eta()];
    let mut set_alive = vec![true; inst.h()];
    let mut forced = Vec::new();
    let live_items = |j: usize, item_alive: &[bool]| inst.set(j).iter().filter(|&&i| item_alive[i]).count();

    loop {
        let rule1 = (0..inst.eta()).filter(|&i| item_alive[i]).find_map(|i| {
            let mut holders = (0..inst.h()).filter(|&j| set_alive[j] && inst.contains(j, i));
            match (holders.next(), holders.next()) {
                (Some(j), None) => Some(j),
                _ => None,
            }
        });
        if let Some(j) = rule1 {
            forced.push(j);
            set_alive[j] = false;
            for &i in inst.set(j) {
                item_alive[i] = false;
            }
            continue;
        }
        let rule2 = (0..inst.h()).find(|&j| set_alive[j] && live_items(j, &item_alive) <= 1);
        if let Some(j) = rule2 {
            set_alive[j] = false;
            continue;
        }
        break;
    }

    let item_map: Vec<usize> = (0..inst.eta()).filter(|&i| item_alive[i]).collect();
    let set_map: Vec<usize> = (0..inst.h()).filter(|&j| set_alive[j]).collect();
    forced.sort_unstable();
    if item_map.is_empty() {
        return NormalizedInstance {
            residual: None,
            forced,
            item_map,
            set_map: Vec::new(),
        };
    }
    let mut new_id = vec![usize::MAX; inst.eta()];
    for (k, &i) in item_map.iter().enumerate() {
        new_id[i] = k;
    }
    let sets = set_map
        .iter()
        .map(|&j| {
            inst.set(j)
                .iter()
                .filter(|&&i| item_alive[i])
                .map(|&i| new_id[i])
                .collect()
        })
        .collect();
    let names = set_map.iter().map(|&j| inst.name(j)).collect();
    // Every live item sits in >= 2 live sets once no rule applies.
    let residual = SetCoverInstance::new(item_map.len(), sets)
        .and_then(|r| r.with_names(names))
        .expect("rules preserve coverability");
    NormalizedInstance {
        residual: Some(residual),
        forced,
        item_map,
        set_map,
    }
}

/// Minimum-cardinality cover, lexicographically least among minimum ones.
pub fn exact_min_cover(inst: &SetCoverInstance) -> Vec<usize> {
    let bits = inst.bitsets();
    let empty = FixedBitSet::with_capacity(inst.eta());
    for r in 0..=inst.h() {
        let mut chosen = Vec::with_capacity(r);
        if cover_dfs(&bits, &empty, 0, r, &mut chosen) {
            return chosen;
        }
    }
    unreachable!("the full collection covers every item")
}

fn cover_dfs(
    bits: &[FixedBitSet],
    acc: &FixedBitSet,
    start: usize,
    remaining: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    if remaining == 0 {
        return acc.is_full();
    }
    for j in start..=bits.len() - remaining {
        let mut next = acc.clone();
        next.union_with(&bits[j]);
        chosen.push(j);
        if cover_dfs(bits, &next, j + 1, remaining - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Classic greedy: most newly covered items first, lowest index on ties.
/// Returned indices are sorted.
pub fn greedy_cover(inst: &SetCoverInstance) -> Vec<usize> {
    let bits = inst.bitsets();
    let mut covered = FixedBitSet::with_capacity(inst.eta());
    let mut chosen = Vec::new();
    while !covered.is_full() {
        let (j, _) = bits
            .iter()
            .enumerate()
            .map(|(j, b)| (j, b.difference(&covered).count()))
            .fold((usize::MAX, 0), |best, cur| if cur.1 > best.1 { cur } else { best });
        covered.union_with(&bits[j]);
        chosen.push(j);
    }
    chosen.sort_unstable();
    chosen
}

/// A small worked instance: five items, four sets.
pub fn sample_instance() -> SetCoverInstance {
    SetCoverInstance::new(
        5,
        vec![vec![0, 1, 2], vec![1, 2], vec![1, 3, 4], vec![2, 4]],
    )
    .expect("valid instance")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_errors() {
        assert_eq!(
            SetCoverInstance::new(2, vec![vec![0, 2]]),
            Err(CoverError::ItemOutOfRange { set: 0, item: 2, eta: 2 })
        );
        assert_eq!(
            SetCoverInstance::new(3, vec![vec![0, 1]]),
            Err(CoverError::Uncoverable(2))
        );
    }

    #[test]
    fn validate_examples() {
        let f = sample_instance();
        assert_eq!(validate_cover(&f, &[0, 2]), Ok(true));
        assert_eq!(validate_cover(&f, &[1, 3]), Ok(false));
        assert_eq!(validate_cover(&f, &[0, 1, 2, 3]), Ok(true));
        assert_eq!(validate_cover(&f, &[4]), Err(CoverError::SetIndex(4)));
    }

    #[test]
    fn normalize_sample_instance() {
        let n = normalize(&sample_instance());
        assert!(n.is_solved());
        assert_eq!(n.forced, vec![0, 2]);
        assert_eq!(n.lift_cover(&[]), vec![0, 2]);
    }

    #[test]
    fn normalize_fixed_point() {
        let inst = SetCoverInstance::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert!(inst.is_normalized());
        let n = normalize(&inst);
        assert!(n.forced.is_empty());
        assert_eq!(n.residual.as_ref().map(|r| r.sets()), Some(inst.sets()));
        assert_eq!(n.item_map, vec![0, 1, 2]);
        assert_eq!(n.set_map, vec![0, 1, 2]);
    }

    #[test]
    fn normalize_single_set() {
        let inst = SetCoverInstance::new(3, vec![vec![0, 1, 2]]).unwrap();
        let n = normalize(&inst);
        assert!(n.is_solved());
        assert_eq!(n.forced, vec![0]);
    }

    #[test]
    fn normalize_partial() {
        // Item 4 forces set 3; item 3 then drops out and sets 0..=2 remain.
        let inst = SetCoverInstance::new(
            5,
            vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![3, 4], vec![3]],
        )
        .unwrap();
        let n = normalize(&inst);
        assert_eq!(n.forced, vec![3]);
        assert_eq!(n.item_map, vec![0, 1, 2]);
        assert_eq!(n.set_map, vec![0, 1, 2]);
        let r = n.residual.unwrap();
        assert!(r.is_normalized());
        assert_eq!(r.name(2), "S3");
    }

    #[test]
    fn exact_examples() {
        assert_eq!(exact_min_cover(&sample_instance()), vec![0, 2]);
        let one = SetCoverInstance::new(1, vec![vec![0]]).unwrap();
        assert_eq!(exact_min_cover(&one), vec![0]);
        let three = SetCoverInstance::new(2, vec![vec![0], vec![1], vec![0, 1]]).unwrap();
        assert_eq!(exact_min_cover(&three), vec![2]);
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(greedy_cover(&sample_instance()), vec![0, 2]);
        let parts = SetCoverInstance::new(4, vec![vec![0, 1], vec![2], vec![3]]).unwrap();
        assert_eq!(greedy_cover(&parts), vec![0, 1, 2]);
        let full = SetCoverInstance::new(3, vec![vec![0], vec![0, 1, 2], vec![1]]).unwrap();
        assert_eq!(greedy_cover(&full), vec![1]);
    }

    #[test]
    fn text_format() {
        let f = sample_instance();
        let text = f.to_text();
        assert_eq!(text, "5 4\n0 1 2\n1 2\n1 3 4\n2 4\n");
        assert_eq!(SetCoverInstance::parse(&text), Ok(f));
        assert!(matches!(
            SetCoverInstance::parse("2 2\n0 1\n"),
            Err(CoverError::Parse { .. })
        ));
        assert!(matches!(
            SetCoverInstance::parse("2 1\n0\n1\n"),
            Err(CoverError::Parse { .. })
        ));
        let with_empty = SetCoverInstance::new(2, vec![vec![], vec![0, 1]]).unwrap();
        assert_eq!(with_empty.to_text(), "2 2\n\n0 1\n");
        assert_eq!(SetCoverInstance::parse("# c\n2 2\n\n0 1\n\n"), Ok(with_empty));
    }
}
