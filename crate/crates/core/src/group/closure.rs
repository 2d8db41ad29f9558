//! Breadth-first closure of a finitely generated matrix group.

use std::collections::HashSet;

use rayon::prelude::*;
use thiserror::Error;

use super::arith::Arith;
use super::classical::OrderError;
use super::pack::{PackedCode, Packer};
use crate::field::Field;
use crate::linalg::{LinalgError, Matrix};

/// Enumeration stops once more than this many elements have been found,
/// unless the caller asks otherwise.
pub const DEFAULT_CAP: usize = 1 << 28;

/// Membership uses a flat bitset when the packed code is at most this wide.
const BITSET_BITS: u32 = 27;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("at least one generator is required")]
    NoGenerators,
    #[error("generators must be square matrices of one size over one field")]
    Inconsistent,
    #[error("generator {0} is singular")]
    Singular(usize),
    #[error("enumeration capped at {0} elements")]
    Capped(usize),
    #[error("expected degree {expected}, got {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("census needs a direct (non-projective) closure")]
    ProjectiveInput,
    #[error("unitarization failed: {0}")]
    Unitarize(String),
    #[error("bundles must share n and alpha")]
    BundleMismatch,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Order(#[from] OrderError),
}

trait Store: Sync {
    fn len(&self) -> usize;
    fn get(&self, i: usize, out: &mut [u64]);
    /// Adds the element if new; returns whether it was new.
    fn insert(&mut self, e: &[u64]) -> bool;
    fn contains(&self, e: &[u64]) -> bool;
    fn code(&self, i: usize) -> PackedCode;
}

enum WordSeen {
    Bits(Vec<u64>),
    Hash(HashSet<u64>),
}

struct WordStore {
    packer: Packer,
    codes: Vec<u64>,
    seen: WordSeen,
}

impl Store for WordStore {
    fn len(&self) -> usize {
        self.codes.len()
    }
    fn get(&self, i: usize, out: &mut [u64]) {
        self.packer.unpack_word(self.codes[i], out)
    }
    fn insert(&mut self, e: &[u64]) -> bool {
        let c = self.packer.pack_word(e);
        let new = match &mut self.seen {
            WordSeen::Bits(bits) => {
                let (w, b) = ((c >> 6) as usize, c & 63);
                let fresh = bits[w] >> b & 1 == 0;
                bits[w] |= 1 << b;
                fresh
            }
            WordSeen::Hash(h) => h.insert(c),
        };
        if new {
            self.codes.push(c);
        }
        new
    }
    fn contains(&self, e: &[u64]) -> bool {
        let c = self.packer.pack_word(e);
        match &self.seen {
            WordSeen::Bits(bits) => bits[(c >> 6) as usize] >> (c & 63) & 1 == 1,
            WordSeen::Hash(h) => h.contains(&c),
        }
    }
    fn code(&self, i: usize) -> PackedCode {
        PackedCode::Word(self.codes[i])
    }
}

struct WideStore {
    packer: Packer,
    codes: Vec<u128>,
    seen: HashSet<u128>,
}

impl Store for WideStore {
    fn len(&self) -> usize {
        self.codes.len()
    }
    fn get(&self, i: usize, out: &mut [u64]) {
        self.packer.unpack_wide(self.codes[i], out)
    }
    fn insert(&mut self, e: &[u64]) -> bool {
        let c = self.packer.pack_wide(e);
        let new = self.seen.insert(c);
        if new {
            self.codes.push(c);
        }
        new
    }
    fn contains(&self, e: &[u64]) -> bool {
        self.seen.contains(&self.packer.pack_wide(e))
    }
    fn code(&self, i: usize) -> PackedCode {
        PackedCode::Wide(self.codes[i])
    }
}

struct ByteStore {
    packer: Packer,
    codes: Vec<Vec<u8>>,
    seen: HashSet<Vec<u8>>,
}

impl Store for ByteStore {
    fn len(&self) -> usize {
        self.codes.len()
    }
    fn get(&self, i: usize, out: &mut [u64]) {
        self.packer.unpack_bytes(&self.codes[i], out)
    }
    fn insert(&mut self, e: &[u64]) -> bool {
        let c = self.packer.pack_bytes(e);
        if self.seen.contains(&c) {
            return false;
        }
        self.seen.insert(c.clone());
        self.codes.push(c);
        true
    }
    fn contains(&self, e: &[u64]) -> bool {
        self.seen.contains(&self.packer.pack_bytes(e))
    }
    fn code(&self, i: usize) -> PackedCode {
        PackedCode::Bytes(self.codes[i].clone())
    }
}

enum Elements {
    Word(WordStore),
    Wide(WideStore),
    Bytes(ByteStore),
}

impl Elements {
    fn new(packer: Packer) -> Elements {
        let bits = packer.total_bits();
        if bits <= BITSET_BITS {
            let words = (1usize << bits).div_ceil(64);
            Elements::Word(WordStore { packer, codes: Vec::new(), seen: WordSeen::Bits(vec![0; words]) })
        } else if packer.fits_word() {
            Elements::Word(WordStore { packer, codes: Vec::new(), seen: WordSeen::Hash(HashSet::new()) })
        } else if packer.fits_wide() {
            Elements::Wide(WideStore { packer, codes: Vec::new(), seen: HashSet::new() })
        } else {
            Elements::Bytes(ByteStore { packer, codes: Vec::new(), seen: HashSet::new() })
        }
    }

    fn store(&self) -> &dyn Store {
        match self {
            Elements::Word(s) => s,
            Elements::Wide(s) => s,
            Elements::Bytes(s) => s,
        }
    }
}

/// An enumerated matrix group, possibly modulo scalars.
pub struct GroupClosure {
    field: Field,
    n: usize,
    gens: Vec<Matrix>,
    projective: bool,
    packer: Packer,
    elements: Elements,
    capped: bool,
    arith: Arith,
}

impl std::fmt::Debug for GroupClosure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupClosure")
            .field("field", &self.field)
            .field("n", &self.n)
            .field("projective", &self.projective)
            .field("order", &self.order())
            .field("capped", &self.capped)
            .finish()
    }
}

impl GroupClosure {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Matrix size `N`.
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Matrix] {
        &self.gens
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    pub fn capped(&self) -> bool {
        self.capped
    }

    /// Number of elements found; the group order when not capped.
    pub fn order(&self) -> u64 {
        self.elements.store().len() as u64
    }

    pub fn packer(&self) -> Packer {
        self.packer
    }

    /// Packed code of the `i`-th element in discovery order.
    pub fn code(&self, i: usize) -> PackedCode {
        self.elements.store().code(i)
    }

    pub fn entries(&self, i: usize) -> Vec<u64> {
        let mut out = vec![0u64; self.n * self.n];
        self.elements.store().get(i, &mut out);
        out
    }

    pub fn matrix(&self, i: usize) -> Matrix {
        Matrix::from_codes(&self.field, self.n, self.n, self.entries(i)).expect("stored entries are valid")
    }

    /// Elements in discovery order; the identity comes first.
    pub fn matrices(&self) -> impl Iterator<Item = Matrix> + '_ {
        (0..self.order() as usize).map(|i| self.matrix(i))
    }

    /// Membership test; projective closures compare classes modulo scalars.
    pub fn contains(&self, m: &Matrix) -> bool {
        if m.field() != &self.field || m.rows() != self.n || m.cols() != self.n {
            return false;
        }
        let mut e = m.codes().to_vec();
        if self.projective {
            self.arith.canonicalize(&mut e);
        }
        self.elements.store().contains(&e)
    }

    pub(crate) fn arith(&self) -> &Arith {
        &self.arith
    }

    /// Counts elements satisfying `pred`, in parallel.
    pub fn count_where<F>(&self, pred: F) -> u64
    where
        F: Fn(&[u64]) -> bool + Sync,
    {
        let store = self.elements.store();
        let nn = self.n * self.n;
        (0..store.len())
            .into_par_iter()
            .fold(
                || (vec![0u64; nn], 0u64),
                |(mut buf, acc), i| {
                    store.get(i, &mut buf);
                    let hit = pred(&buf) as u64;
                    (buf, acc + hit)
                },
            )
            .map(|(_, c)| c)
            .sum()
    }

    /// Whether every element satisfies `pred`, in parallel.
    pub fn all<F>(&self, pred: F) -> bool
    where
        F: Fn(&[u64]) -> bool + Sync,
    {
        let store = self.elements.store();
        let nn = self.n * self.n;
        (0..store.len()).into_par_iter().all(|i| {
            let mut buf = vec![0u64; nn];
            store.get(i, &mut buf);
            pred(&buf)
        })
    }

    pub(crate) fn det_entries(&self, e: &[u64]) -> u64 {
        self.arith.det(self.n, e)
    }
}

fn validate(gens: &[Matrix]) -> Result<(Field, usize), GroupError> {
    let first = gens.first().ok_or(GroupError::NoGenerators)?;
    let (field, n) = (first.field().clone(), first.rows());
    for (i, g) in gens.iter().enumerate() {
        if !g.is_square() || g.rows() != n || g.field() != &field {
            return Err(GroupError::Inconsistent);
        }
        if g.det()?.is_zero() {
            return Err(GroupError::Singular(i));
        }
    }
    Ok((field, n))
}

fn bfs(store: &mut dyn Store, arith: &Arith, n: usize, steps: &[Vec<u64>], projective: bool, cap: usize) -> bool {
    let mut id = vec![0u64; n * n];
    for i in 0..n {
        id[i * n + i] = 1;
    }
    store.insert(&id);
    let mut cur = vec![0u64; n * n];
    let mut next = vec![0u64; n * n];
    let mut i = 0;
    while i < store.len() {
        store.get(i, &mut cur);
        if i % 1024 == 0 {
            debug_assert!(store.contains(&cur), "pack/unpack round trip");
        }
        for s in steps {
            arith.matmul(n, &cur, s, &mut next);
            if projective {
                arith.canonicalize(&mut next);
            }
            if store.insert(&next) && store.len() > cap {
                return true;
            }
        }
        i += 1;
    }
    false
}

fn run(gens: &[Matrix], cap: usize, projective: bool) -> Result<GroupClosure, GroupError> {
    let (field, n) = validate(gens)?;
    let arith = Arith::new(&field);
    let mut steps: Vec<Vec<u64>> = Vec::with_capacity(2 * gens.len());
    for g in gens {
        let inv = g.inverse()?;
        for m in [g, &inv] {
            let mut e = m.codes().to_vec();
            if projective {
                arith.canonicalize(&mut e);
            }
            if !steps.contains(&e) {
                steps.push(e);
            }
        }
    }
    let packer = Packer::new(n, field.order());
    let mut elements = Elements::new(packer);
    let capped = match &mut elements {
        Elements::Word(s) => bfs(s, &arith, n, &steps, projective, cap),
        Elements::Wide(s) => bfs(s, &arith, n, &steps, projective, cap),
        Elements::Bytes(s) => bfs(s, &arith, n, &steps, projective, cap),
    };
    Ok(GroupClosure { field, n, gens: gens.to_vec(), projective, packer, elements, capped, arith })
}

/// Enumerates `<gens>` by breadth-first search from the identity, multiplying
/// on the right by each generator and inverse. Stops with `capped = true`
/// once more than `cap` elements are known.
pub fn closure(gens: &[Matrix], cap: usize) -> Result<GroupClosure, GroupError> {
    run(gens, cap, false)
}

/// As [`closure`], but in `PGL_N`: every product is scaled so its first
/// nonzero entry is 1.
pub fn projective_closure(gens: &[Matrix], cap: usize) -> Result<GroupClosure, GroupError> {
    run(gens, cap, true)
}
