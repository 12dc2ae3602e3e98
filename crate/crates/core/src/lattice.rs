//! Integer lattices: symmetric bilinear forms over Z with exact invariants,
//! Smith-normal-form cokernels, orthogonal complements in the saturation,
//! the classification of indefinite unimodular forms, and a bounded
//! equivalence search plus a desk-scale enumeration of small forms.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{
    determinant, rank_rational, signature_triple, smith_normal_form, Int, IntMat,
    SmithDecomposition,
};

/// A symmetric integer Gram matrix with labeled basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerLattice {
    gram: IntMat,
    basis_labels: Vec<String>,
}

impl IntegerLattice {
    pub fn new(gram: IntMat) -> Result<Self> {
        let labels = (1..=gram.nrows()).map(|i| format!("v{i}")).collect();
        Self::with_labels(gram, labels)
    }

    pub fn with_labels(gram: IntMat, basis_labels: Vec<String>) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::input("Gram matrix must be square"));
        }
        if !gram.is_symmetric() {
            return Err(Error::input("Gram matrix must be symmetric"));
        }
        if basis_labels.len() != gram.nrows() {
            return Err(Error::input("basis label count must match matrix size"));
        }
        Ok(IntegerLattice { gram, basis_labels })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(IntMat::from_i64(rows))
    }

    pub fn gram(&self) -> &IntMat {
        &self.gram
    }

    pub fn labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn size(&self) -> usize {
        self.gram.nrows()
    }

    /// Gram pairing of two integer vectors.
    pub fn pair(&self, a: &[Int], b: &[Int]) -> Int {
        assert_eq!(a.len(), self.size());
        assert_eq!(b.len(), self.size());
        let gb = self.gram.mul_vec(b);
        a.iter().zip(gb.iter()).map(|(x, y)| x * y).sum()
    }

    pub fn negate(&self) -> IntegerLattice {
        let n = self.size();
        let mut g = IntMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g.set(i, j, -self.gram.get(i, j));
            }
        }
        IntegerLattice { gram: g, basis_labels: self.basis_labels.clone() }
    }

    pub fn direct_sum(parts: &[IntegerLattice]) -> IntegerLattice {
        let n: usize = parts.iter().map(|p| p.size()).sum();
        let mut g = IntMat::zeros(n, n);
        let mut labels = Vec::with_capacity(n);
        let mut off = 0;
        for (k, p) in parts.iter().enumerate() {
            for i in 0..p.size() {
                for j in 0..p.size() {
                    g.set(off + i, off + j, p.gram.get(i, j).clone());
                }
            }
            labels.extend(p.basis_labels.iter().map(|l| format!("s{}.{}", k + 1, l)));
            off += p.size();
        }
        IntegerLattice { gram: g, basis_labels: labels }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Definiteness {
    PositiveDefinite,
    NegativeDefinite,
    PositiveSemidefinite,
    NegativeSemidefinite,
    Indefinite,
    Zero,
}

/// Exact congruence invariants of a symmetric integer form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormInvariants {
    pub rank: usize,
    pub corank: usize,
    /// (n_plus, n_zero, n_minus)
    pub signature: (usize, usize, usize),
    pub parity: Parity,
    pub determinant: Int,
    pub definiteness: Definiteness,
}

impl FormInvariants {
    pub fn sigma(&self) -> i64 {
        self.signature.0 as i64 - self.signature.2 as i64
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant.abs().is_one()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.corank == 0
    }
}

pub fn form_invariants(lattice: &IntegerLattice) -> FormInvariants {
    form_invariants_of(lattice.gram())
}

pub fn form_invariants_of(gram: &IntMat) -> FormInvariants {
    let (plus, zero, minus) = signature_triple(gram);
    let parity = if gram.diagonal().iter().all(|d| (d % 2i32).is_zero()) {
        Parity::Even
    } else {
        Parity::Odd
    };
    let definiteness = match (plus, zero, minus) {
        (0, 0, 0) => Definiteness::Zero,
        (_, 0, 0) => Definiteness::PositiveDefinite,
        (0, 0, _) => Definiteness::NegativeDefinite,
        (p, _, 0) if p > 0 => Definiteness::PositiveSemidefinite,
        (0, _, m) if m > 0 => Definiteness::NegativeSemidefinite,
        (0, _, 0) => Definiteness::Zero,
        _ => Definiteness::Indefinite,
    };
    FormInvariants {
        rank: plus + minus,
        corank: zero,
        signature: (plus, zero, minus),
        parity,
        determinant: determinant(gram),
        definiteness,
    }
}

/// The cokernel Z^n / im(M) of an integer matrix, read off the Smith form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CokernelGroup {
    pub free_rank: usize,
    /// Torsion coefficients > 1, each dividing the next.
    pub torsion_coefficients: Vec<u64>,
    /// d_Q: order of the torsion subgroup.
    pub torsion_order: u64,
}

impl CokernelGroup {
    pub fn free(rank: usize) -> Self {
        CokernelGroup { free_rank: rank, torsion_coefficients: vec![], torsion_order: 1 }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion_coefficients.is_empty()
    }

    pub fn with_extra_free(&self, extra: usize) -> Self {
        CokernelGroup {
            free_rank: self.free_rank + extra,
            torsion_coefficients: self.torsion_coefficients.clone(),
            torsion_order: self.torsion_order,
        }
    }
}

impl fmt::Display for CokernelGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion_coefficients {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

pub fn cokernel_group(m: &IntMat) -> CokernelGroup {
    let snf = smith_normal_form(m);
    let diag = snf.d.diagonal();
    let rank = diag.iter().take_while(|x| !x.is_zero()).count();
    let torsion: Vec<u64> = diag[..rank]
        .iter()
        .filter(|d| !d.is_one())
        .map(|d| u64::try_from(d).expect("torsion coefficient fits in u64"))
        .collect();
    let order = torsion.iter().product();
    CokernelGroup {
        free_rank: m.nrows() - rank,
        torsion_coefficients: torsion,
        torsion_order: order,
    }
}

pub fn smith_decomposition(m: &IntMat) -> SmithDecomposition {
    smith_normal_form(m)
}

// ---------------------------------------------------------------------------
// standard lattices

const E8_EDGES: [(usize, usize); 7] = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];

/// E8 in the Dynkin convention: positive definite, even, determinant 1.
pub fn e8() -> IntegerLattice {
    let mut g = IntMat::zeros(8, 8);
    for i in 0..8 {
        g.set(i, i, Int::from(2));
    }
    for &(a, b) in &E8_EDGES {
        g.set(a, b, Int::from(-1));
        g.set(b, a, Int::from(-1));
    }
    IntegerLattice::with_labels(g, (1..=8).map(|i| format!("e{i}")).collect()).unwrap()
}

/// The hyperbolic plane [[0,1],[1,0]].
pub fn hyperbolic() -> IntegerLattice {
    IntegerLattice::with_labels(
        IntMat::from_i64(&[vec![0, 1], vec![1, 0]]),
        vec!["x".into(), "y".into()],
    )
    .unwrap()
}

pub fn diag_lattice(entries: &[i64]) -> Result<IntegerLattice> {
    if entries.is_empty() {
        return Err(Error::input("diag lattice needs at least one entry"));
    }
    let n = entries.len();
    let mut g = IntMat::zeros(n, n);
    for (i, &d) in entries.iter().enumerate() {
        g.set(i, i, Int::from(d));
    }
    IntegerLattice::new(g)
}

/// The K3 intersection form 3H + 2(-E8), rank 22, signature -16.
pub fn k3() -> IntegerLattice {
    let h = hyperbolic();
    let me8 = e8().negate();
    IntegerLattice::direct_sum(&[h.clone(), h.clone(), h, me8.clone(), me8])
}

/// Constructor expressions for standard lattices, e.g.
/// `E8`, `H`, `K3`, `diag(4,6)`, `negate(E8)`, `direct_sum(H,H,negate(E8))`.
pub fn build_lattice(expr: &str) -> Result<IntegerLattice> {
    let expr = expr.trim();
    match expr {
        "E8" | "e8" => return Ok(e8()),
        "H" | "h" => return Ok(hyperbolic()),
        "K3" | "k3" => return Ok(k3()),
        _ => {}
    }
    let (head, inner) = expr
        .split_once('(')
        .filter(|(_, rest)| rest.ends_with(')'))
        .map(|(h, rest)| (h.trim(), &rest[..rest.len() - 1]))
        .ok_or_else(|| Error::input(format!("unknown lattice name '{expr}'")))?;
    match head {
        "diag" => {
            let entries: Vec<i64> = inner
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| Error::input(format!("bad diag entry '{t}'"))))
                .collect::<Result<_>>()?;
            diag_lattice(&entries)
        }
        "negate" | "neg" => Ok(build_lattice(inner)?.negate()),
        "direct_sum" | "sum" => {
            let parts = split_top_level(inner)?;
            if parts.is_empty() {
                return Err(Error::input("direct_sum needs at least one summand"));
            }
            let lattices: Vec<IntegerLattice> =
                parts.iter().map(|p| build_lattice(p)).collect::<Result<_>>()?;
            Ok(IntegerLattice::direct_sum(&lattices))
        }
        _ => Err(Error::input(format!("unknown lattice constructor '{head}'"))),
    }
}

fn split_top_level(s: &str) -> Result<Vec<String>> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth.checked_sub(1).ok_or_else(|| Error::input("unbalanced parentheses"))?;
                cur.push(ch);
            }
            ',' if depth == 0 => {
                parts.push(cur.trim().to_string());
                cur.clear();
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        parts.push(cur.trim().to_string());
    }
    Ok(parts)
}

// ---------------------------------------------------------------------------
// orthogonal complement

/// Gram matrix of {x in L : x . v = 0 for all given v}, computed with respect
/// to an integral basis of the saturation of the annihilator.
pub fn orthogonal_complement(
    lattice: &IntegerLattice,
    sublattice: &[Vec<Int>],
) -> Result<IntegerLattice> {
    let n = lattice.size();
    let k = sublattice.len();
    if sublattice.iter().any(|v| v.len() != n) {
        return Err(Error::input("sublattice vector length must match lattice rank"));
    }
    let mut vmat = IntMat::zeros(k, n);
    for (i, v) in sublattice.iter().enumerate() {
        for (j, x) in v.iter().enumerate() {
            vmat.set(i, j, x.clone());
        }
    }
    if rank_rational(&vmat.transpose()) != k {
        return Err(Error::domain("sublattice vectors are linearly dependent"));
    }
    // pairing matrix P[i][j] = v_i . e_j; its integer kernel (read off the
    // Smith form of P) is automatically saturated.
    let pairing = vmat.mul(lattice.gram());
    let snf = smith_normal_form(&pairing);
    let rank = snf.rank();
    let dim = n - rank;
    let mut basis = IntMat::zeros(n, dim);
    for (out, col) in (rank..n).enumerate() {
        for i in 0..n {
            basis.set(i, out, snf.v.get(i, col).clone());
        }
    }
    let gram = basis.transpose().mul(lattice.gram()).mul(&basis);
    IntegerLattice::with_labels(gram, (1..=dim).map(|i| format!("c{i}")).collect())
}

/// Integer basis vectors of the complement (columns), in the ambient basis.
pub fn orthogonal_complement_basis(
    lattice: &IntegerLattice,
    sublattice: &[Vec<Int>],
) -> Result<Vec<Vec<Int>>> {
    let n = lattice.size();
    let k = sublattice.len();
    let mut vmat = IntMat::zeros(k, n);
    for (i, v) in sublattice.iter().enumerate() {
        for (j, x) in v.iter().enumerate() {
            vmat.set(i, j, x.clone());
        }
    }
    let pairing = vmat.mul(lattice.gram());
    let snf = smith_normal_form(&pairing);
    Ok((snf.rank()..n).map(|col| snf.v.column(col)).collect())
}

// ---------------------------------------------------------------------------
// classification of indefinite unimodular forms

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum UnimodularClass {
    /// p<1> + q<-1>
    Odd { positives: usize, negatives: usize },
    /// a H + b (sign E8)  (sign = +1 or -1; b may be 0)
    Even { hyperbolics: usize, e8_copies: usize, e8_positive: bool },
}

impl UnimodularClass {
    /// The canonical Gram matrix of this class.
    pub fn gram(&self) -> IntegerLattice {
        match self {
            UnimodularClass::Odd { positives, negatives } => {
                let mut d = vec![1i64; *positives];
                d.extend(std::iter::repeat(-1).take(*negatives));
                diag_lattice(&d).expect("nonempty diagonal")
            }
            UnimodularClass::Even { hyperbolics, e8_copies, e8_positive } => {
                let mut parts: Vec<IntegerLattice> = Vec::new();
                for _ in 0..*hyperbolics {
                    parts.push(hyperbolic());
                }
                for _ in 0..*e8_copies {
                    parts.push(if *e8_positive { e8() } else { e8().negate() });
                }
                IntegerLattice::direct_sum(&parts)
            }
        }
    }
}

impl fmt::Display for UnimodularClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn coef(n: usize) -> String {
            if n == 1 {
                String::new()
            } else {
                n.to_string()
            }
        }
        match self {
            UnimodularClass::Odd { positives, negatives } => {
                write!(f, "{}<1> + {}<-1>", coef(*positives), coef(*negatives))
            }
            UnimodularClass::Even { hyperbolics, e8_copies, e8_positive } => {
                if *e8_copies == 0 {
                    write!(f, "{}H", coef(*hyperbolics))
                } else {
                    let sign = if *e8_positive { "E8" } else { "-E8" };
                    write!(f, "{}H + {}({})", coef(*hyperbolics), coef(*e8_copies), sign)
                }
            }
        }
    }
}

/// Classification of indefinite unimodular forms by rank, signature, parity.
pub fn classify_indefinite_unimodular(
    rank: usize,
    signature: i64,
    parity: Parity,
) -> Result<UnimodularClass> {
    if signature.unsigned_abs() as usize >= rank {
        return Err(Error::domain(format!(
            "form of rank {rank} and signature {signature} is definite; classification requires an indefinite form"
        )));
    }
    if (rank as i64 - signature) % 2 != 0 {
        return Err(Error::domain("rank and signature must have equal parity"));
    }
    match parity {
        Parity::Odd => {
            let p = ((rank as i64 + signature) / 2) as usize;
            let q = rank - p;
            Ok(UnimodularClass::Odd { positives: p, negatives: q })
        }
        Parity::Even => {
            if signature.rem_euclid(8) != 0 {
                return Err(Error::domain(
                    "an even unimodular form has signature divisible by 8",
                ));
            }
            let b = (signature.unsigned_abs() / 8) as usize;
            let a = (rank - 8 * b) / 2;
            Ok(UnimodularClass::Even {
                hyperbolics: a,
                e8_copies: b,
                e8_positive: signature > 0,
            })
        }
    }
}

// ---------------------------------------------------------------------------
// bounded equivalence search

/// Searches for unimodular T with T^t G1 T = G2, entries in [-bound, bound].
/// `None` means "not found within the bound", never a proof of inequivalence.
pub fn equivalence_search_small(
    l1: &IntegerLattice,
    l2: &IntegerLattice,
    coefficient_bound: i64,
) -> Option<IntMat> {
    if l1.size() != l2.size() {
        return None;
    }
    let n = l1.size();
    if n == 0 {
        return Some(IntMat::identity(0));
    }
    let bound = coefficient_bound.max(0);

    // candidate columns grouped by their self-pairing
    let mut vectors: Vec<Vec<Int>> = Vec::new();
    let mut cur = vec![-bound; n];
    loop {
        vectors.push(cur.iter().map(|&x| Int::from(x)).collect());
        let mut i = 0;
        loop {
            if i == n {
                break;
            }
            if cur[i] < bound {
                cur[i] += 1;
                break;
            }
            cur[i] = -bound;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    let mut by_norm: BTreeMap<Int, Vec<usize>> = BTreeMap::new();
    for (idx, v) in vectors.iter().enumerate() {
        by_norm.entry(l1.pair(v, v)).or_default().push(idx);
    }

    let mut cols: Vec<usize> = Vec::with_capacity(n);
    if search_columns(l1, l2, &vectors, &by_norm, &mut cols) {
        let mut t = IntMat::zeros(n, n);
        for (j, &idx) in cols.iter().enumerate() {
            for i in 0..n {
                t.set(i, j, vectors[idx][i].clone());
            }
        }
        if determinant(&t).abs().is_one() {
            return Some(t);
        }
    }
    None
}

fn search_columns(
    l1: &IntegerLattice,
    l2: &IntegerLattice,
    vectors: &[Vec<Int>],
    by_norm: &BTreeMap<Int, Vec<usize>>,
    cols: &mut Vec<usize>,
) -> bool {
    let j = cols.len();
    if j == l1.size() {
        // columns satisfy all pairings; unimodularity checked by the caller
        let n = l1.size();
        let mut t = IntMat::zeros(n, n);
        for (c, &idx) in cols.iter().enumerate() {
            for i in 0..n {
                t.set(i, c, vectors[idx][i].clone());
            }
        }
        return determinant(&t).abs().is_one();
    }
    let target = l2.gram().get(j, j).clone();
    let Some(cands) = by_norm.get(&target) else { return false };
    for &idx in cands {
        let ok = cols.iter().enumerate().all(|(k, &prev)| {
            l1.pair(&vectors[prev], &vectors[idx]) == *l2.gram().get(k, j)
        });
        if !ok {
            continue;
        }
        cols.push(idx);
        if search_columns(l1, l2, vectors, by_norm, cols) {
            return true;
        }
        cols.pop();
    }
    false
}

// ---------------------------------------------------------------------------
// desk-scale enumeration of forms grouped by cokernel

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CokernelKey {
    pub free_rank: usize,
    pub torsion_coefficients: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct InvariantTuple {
    pub signature: (usize, usize, usize),
    pub parity: Parity,
    pub determinant: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormEnumeration {
    pub size: usize,
    pub entry_bound: i64,
    pub total_forms: usize,
    pub groups: BTreeMap<String, BTreeMap<String, usize>>,
    #[serde(skip)]
    pub raw_groups: BTreeMap<CokernelKey, BTreeMap<InvariantTuple, usize>>,
}

/// Enumerates all symmetric integer matrices of the given size with entries
/// in [-entry_bound, entry_bound], grouped by cokernel invariants.
pub fn enumerate_forms_by_cokernel(size: usize, entry_bound: i64) -> Result<FormEnumeration> {
    if size == 0 || size > 3 || entry_bound < 0 || entry_bound > 4 {
        return Err(Error::domain(
            "enumeration guard: size must be 1..=3 and entry_bound 0..=4",
        ));
    }
    let free = size * (size + 1) / 2;
    let mut raw: BTreeMap<CokernelKey, BTreeMap<InvariantTuple, usize>> = BTreeMap::new();
    let mut entries = vec![-entry_bound; free];
    let mut total = 0usize;
    loop {
        let mut m = IntMat::zeros(size, size);
        let mut idx = 0;
        for i in 0..size {
            for j in i..size {
                m.set(i, j, Int::from(entries[idx]));
                m.set(j, i, Int::from(entries[idx]));
                idx += 1;
            }
        }
        let coker = cokernel_group(&m);
        let inv = form_invariants_of(&m);
        let key = CokernelKey {
            free_rank: coker.free_rank,
            torsion_coefficients: coker.torsion_coefficients,
        };
        let tuple = InvariantTuple {
            signature: inv.signature,
            parity: inv.parity,
            determinant: i64::try_from(&inv.determinant).expect("small determinant"),
        };
        *raw.entry(key).or_default().entry(tuple).or_insert(0) += 1;
        total += 1;

        let mut i = 0;
        loop {
            if i == free {
                break;
            }
            if entries[i] < entry_bound {
                entries[i] += 1;
                break;
            }
            entries[i] = -entry_bound;
            i += 1;
        }
        if i == free {
            break;
        }
    }
    let groups = raw
        .iter()
        .map(|(k, v)| {
            let key = format!("free_rank={} torsion={:?}", k.free_rank, k.torsion_coefficients);
            let inner = v
                .iter()
                .map(|(t, c)| {
                    (
                        format!(
                            "sig=({},{},{}) {:?} det={}",
                            t.signature.0, t.signature.1, t.signature.2, t.parity, t.determinant
                        ),
                        *c,
                    )
                })
                .collect();
            (key, inner)
        })
        .collect();
    Ok(FormEnumeration { size, entry_bound, total_forms: total, groups, raw_groups: raw })
}
