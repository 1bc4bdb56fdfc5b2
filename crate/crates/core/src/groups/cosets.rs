//! Todd–Coxeter coset enumeration (HLT strategy) over the trivial subgroup.

use serde::Serialize;
use thiserror::Error;

use super::presentation::Presentation;
use super::word::Letter;

pub const DEFAULT_MAX_COSETS: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum CosetResult {
    Finite { order: usize },
    LimitExceeded { limit: usize },
}

impl CosetResult {
    pub fn order(self) -> Option<usize> {
        match self {
            CosetResult::Finite { order } => Some(order),
            CosetResult::LimitExceeded { .. } => None,
        }
    }
}

impl std::fmt::Display for CosetResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CosetResult::Finite { order } => write!(f, "Finite({order})"),
            CosetResult::LimitExceeded { limit } => write!(f, "LimitExceeded({limit})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum CosetError {
    #[error("coset enumeration exceeded {0} cosets")]
    LimitExceeded(usize),
}

/// Action of generators on cosets. Column `2g` is generator `g`, column
/// `2g + 1` its inverse. Coset 0 is the subgroup itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    n_gens: usize,
    rows: Vec<Vec<Option<usize>>>,
}

fn column(l: Letter) -> usize {
    2 * l.gen + usize::from(l.exp < 0)
}

impl CosetTable {
    pub fn from_rows(n_gens: usize, rows: Vec<Vec<Option<usize>>>) -> Self {
        CosetTable { n_gens, rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn generator_count(&self) -> usize {
        self.n_gens
    }

    pub fn get(&self, coset: usize, l: Letter) -> Option<usize> {
        self.rows.get(coset)?.get(column(l)).copied().flatten()
    }

    /// Image of `coset` under `l`; panics on an open entry.
    pub fn act(&self, coset: usize, l: Letter) -> usize {
        self.get(coset, l).expect("coset table entry is undefined")
    }

    pub fn act_word(&self, coset: usize, word: &[Letter]) -> usize {
        word.iter().fold(coset, |c, &l| self.act(c, l))
    }

    /// Every entry defined, in range, and each generator column inverse to
    /// its partner column.
    pub fn is_closed(&self) -> bool {
        let n = self.rows.len();
        self.rows.iter().enumerate().all(|(c, row)| {
            row.len() == 2 * self.n_gens
                && (0..self.n_gens).all(|g| match (row[2 * g], row[2 * g + 1]) {
                    (Some(f), Some(b)) if f < n && b < n => {
                        self.rows[f].get(2 * g + 1) == Some(&Some(c)) && self.rows[b].get(2 * g) == Some(&Some(c))
                    }
                    _ => false,
                })
        })
    }
}

struct Enumerator<'a> {
    relators: &'a [Vec<Letter>],
    n_cols: usize,
    table: Vec<Vec<Option<usize>>>,
    /// union-find parent; a coset is live iff it is its own parent
    parent: Vec<usize>,
    queue: Vec<usize>,
    limit: usize,
}

impl<'a> Enumerator<'a> {
    fn new(n_gens: usize, relators: &'a [Vec<Letter>], limit: usize) -> Self {
        Enumerator {
            relators,
            n_cols: 2 * n_gens,
            table: vec![vec![None; 2 * n_gens]],
            parent: vec![0],
            queue: Vec::new(),
            limit,
        }
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, col: usize) -> Result<(), CosetError> {
        if self.table.len() >= self.limit {
            return Err(CosetError::LimitExceeded(self.limit));
        }
        let n = self.table.len();
        self.table.push(vec![None; self.n_cols]);
        self.parent.push(n);
        self.table[c][col] = Some(n);
        self.table[n][col ^ 1] = Some(c);
        Ok(())
    }

    fn rep(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = (a.min(b), a.max(b));
        self.parent[drop] = keep;
        self.queue.push(drop);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for col in 0..self.n_cols {
                let Some(target) = self.table[dead][col] else { continue };
                self.table[dead][col] = None;
                if self.table[target][col ^ 1] == Some(dead) {
                    self.table[target][col ^ 1] = None;
                }
                let mu = self.rep(dead);
                let nu = self.rep(target);
                if let Some(x) = self.table[mu][col] {
                    self.merge(nu, x);
                } else if let Some(x) = self.table[nu][col ^ 1] {
                    self.merge(mu, x);
                } else {
                    self.table[mu][col] = Some(nu);
                    self.table[nu][col ^ 1] = Some(mu);
                }
            }
        }
        self.queue.clear();
    }

    /// Scans `relator` from coset `start`, defining cosets as needed.
    fn scan_and_fill(&mut self, start: usize, relator: usize) -> Result<(), CosetError> {
        let relators = self.relators;
        let word = &relators[relator];
        if word.is_empty() {
            return Ok(());
        }
        let mut f = start;
        let mut b = start;
        let mut i = 0usize;
        let mut j = word.len() as isize - 1;
        loop {
            while (i as isize) <= j {
                match self.table[f][column(word[i])] {
                    Some(next) => {
                        f = next;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i as isize > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize {
                match self.table[b][column(word[j as usize]) ^ 1] {
                    Some(next) => {
                        b = next;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                let col = column(word[i]);
                self.table[f][col] = Some(b);
                self.table[b][col ^ 1] = Some(f);
                return Ok(());
            }
            self.define(f, column(word[i]))?;
        }
    }

    fn run(&mut self) -> Result<(), CosetError> {
        let mut c = 0;
        while c < self.table.len() {
            for r in 0..self.relators.len() {
                if !self.live(c) {
                    break;
                }
                self.scan_and_fill(c, r)?;
            }
            if self.live(c) {
                for col in 0..self.n_cols {
                    if self.table[c][col].is_none() {
                        self.define(c, col)?;
                    }
                }
            }
            c += 1;
        }
        Ok(())
    }

    fn into_table(mut self) -> CosetTable {
        let live: Vec<usize> = (0..self.table.len()).filter(|&c| self.parent[c] == c).collect();
        let mut index = vec![usize::MAX; self.table.len()];
        for (k, &c) in live.iter().enumerate() {
            index[c] = k;
        }
        let rows = live
            .iter()
            .map(|&c| (0..self.n_cols).map(|col| self.table[c][col].map(|t| index[self.rep(t)])).collect())
            .collect();
        CosetTable { n_gens: self.n_cols / 2, rows }
    }
}

/// Complete coset table of the trivial subgroup, i.e. the regular action.
pub fn enumerate_cosets(p: &Presentation, max_cosets: usize) -> Result<CosetTable, CosetError> {
    let mut e = Enumerator::new(p.generator_count(), &p.relators, max_cosets.max(1));
    e.run()?;
    Ok(e.into_table())
}

pub fn todd_coxeter(p: &Presentation, max_cosets: usize) -> CosetResult {
    match enumerate_cosets(p, max_cosets) {
        Ok(table) => CosetResult::Finite { order: table.len() },
        Err(CosetError::LimitExceeded(limit)) => CosetResult::LimitExceeded { limit },
    }
}
