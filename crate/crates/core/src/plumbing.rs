//! Augmented plumbing graphs: vertices carry genus, self-intersection and an
//! optional symplectic area; edges are an unordered multiset. From a graph we
//! derive the intersection form, the topology of the plumbed 4-manifold and
//! its boundary, exact-rational concavity feasibility, first Chern
//! coefficients and the cap classification.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{cokernel_group, form_invariants, CokernelGroup, Definiteness, IntegerLattice};
use crate::matrix::{rat_int, solve_linear, IntMat, Int, LinSolution, Rat};
use crate::surfaces::{resolve_pair, SurfaceClass};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub genus: u32,
    pub self_intersection: i64,
    pub area: Option<Rat>,
}

impl Vertex {
    pub fn new(id: impl Into<String>, genus: u32, self_intersection: i64) -> Self {
        Vertex { id: id.into(), genus, self_intersection, area: None }
    }

    /// c1 pairing with this vertex class by the adjunction formula.
    pub fn kappa(&self) -> i64 {
        self.self_intersection + 2 - 2 * self.genus as i64
    }
}

/// A connected multigraph without self-loops; edges stored by vertex index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
}

impl AugmentedGraph {
    pub fn new(vertices: Vec<Vertex>, edge_ids: &[(String, String)]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::input("graph must have at least one vertex"));
        }
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].iter().any(|w| w.id == v.id) {
                return Err(Error::input(format!("duplicate vertex id '{}'", v.id)));
            }
            if let Some(a) = &v.area {
                if !a.is_positive() {
                    return Err(Error::input(format!("area of '{}' must be positive", v.id)));
                }
            }
        }
        let index = |id: &str| {
            vertices
                .iter()
                .position(|v| v.id == id)
                .ok_or_else(|| Error::input(format!("edge endpoint '{id}' is not a vertex")))
        };
        let mut edges = Vec::with_capacity(edge_ids.len());
        for (a, b) in edge_ids {
            let (i, j) = (index(a)?, index(b)?);
            if i == j {
                return Err(Error::input(format!("self-loop at vertex '{a}' is not allowed")));
            }
            edges.push((i.min(j), i.max(j)));
        }
        let g = AugmentedGraph { vertices, edges };
        if !g.is_connected() {
            return Err(Error::input("graph must be connected"));
        }
        Ok(g)
    }

    fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_multiplicity(&self, i: usize, j: usize) -> usize {
        let key = (i.min(j), i.max(j));
        self.edges.iter().filter(|&&e| e == key).count()
    }

    pub fn total_genus(&self) -> u64 {
        self.vertices.iter().map(|v| v.genus as u64).sum()
    }

    /// First Betti number of the underlying graph (cycle rank).
    pub fn cycle_rank(&self) -> u64 {
        (self.edges.len() + 1 - self.vertices.len()) as u64
    }

    /// Replaces all areas; the list follows vertex order.
    pub fn with_areas(&self, areas: &[Rat]) -> Result<Self> {
        if areas.len() != self.vertices.len() {
            return Err(Error::input("area count must match vertex count"));
        }
        if areas.iter().any(|a| !a.is_positive()) {
            return Err(Error::input("all areas must be positive"));
        }
        let mut g = self.clone();
        for (v, a) in g.vertices.iter_mut().zip(areas) {
            v.area = Some(a.clone());
        }
        Ok(g)
    }

    pub fn areas(&self) -> Result<Vec<Rat>> {
        self.vertices
            .iter()
            .map(|v| {
                v.area
                    .clone()
                    .ok_or_else(|| Error::input(format!("vertex '{}' has no declared area", v.id)))
            })
            .collect()
    }
}

/// Q_ii = s_i; Q_ij = number of edges between i and j.
pub fn intersection_matrix(g: &AugmentedGraph) -> IntegerLattice {
    let n = g.vertices.len();
    let mut q = IntMat::zeros(n, n);
    for (i, v) in g.vertices.iter().enumerate() {
        q.set(i, i, Int::from(v.self_intersection));
    }
    for &(a, b) in g.edges.iter() {
        let v: Int = q.get(a, b) + 1;
        q.set(a, b, v.clone());
        q.set(b, a, v);
    }
    let labels = g.vertices.iter().map(|v| v.id.clone()).collect();
    IntegerLattice::with_labels(q, labels).expect("intersection matrix is symmetric")
}

#[derive(Clone, Debug)]
pub struct PlumbingTopology {
    pub q: IntegerLattice,
    pub e: i64,
    pub sigma: i64,
    /// (b0, b1, b2, b3)
    pub betti: (u64, u64, u64, u64),
    pub boundary_b1: u64,
    pub boundary_h1: CokernelGroup,
}

pub fn plumbing_topology(g: &AugmentedGraph) -> PlumbingTopology {
    let q = intersection_matrix(g);
    let inv = form_invariants(&q);
    let total_genus = g.total_genus();
    let e: i64 = g
        .vertices
        .iter()
        .map(|v| 2 - 2 * v.genus as i64)
        .sum::<i64>()
        - g.edges.len() as i64;
    let b1 = 2 * total_genus + g.cycle_rank();
    let b2 = g.vertices.len() as u64;
    let coker = cokernel_group(q.gram());
    let boundary_free = 2 * total_genus + g.cycle_rank();
    PlumbingTopology {
        sigma: inv.sigma(),
        e,
        betti: (1, b1, b2, 0),
        boundary_b1: inv.corank as u64 + boundary_free,
        boundary_h1: coker.with_extra_free(boundary_free as usize),
        q,
    }
}

// ---------------------------------------------------------------------------
// exact rational linear feasibility (Fourier–Motzkin)

/// An inequality coeffs · x <= rhs.
type Ineq = (Vec<Rat>, Rat);

/// Eliminates the first variable; the returned system is over the remaining
/// variables (index shifted down by one).
fn fm_eliminate_first(system: &[Ineq]) -> Vec<Ineq> {
    let mut pos: Vec<(Vec<Rat>, Rat)> = Vec::new();
    let mut neg: Vec<(Vec<Rat>, Rat)> = Vec::new();
    let mut out: Vec<Ineq> = Vec::new();
    for (coeffs, rhs) in system {
        let c0 = &coeffs[0];
        if c0.is_zero() {
            out.push((coeffs[1..].to_vec(), rhs.clone()));
        } else {
            // normalize to x0 <= expr (pos) or x0 >= expr (neg)
            let scaled: Vec<Rat> = coeffs[1..].iter().map(|c| c / c0).collect();
            let srhs = rhs / c0;
            if c0.is_positive() {
                pos.push((scaled, srhs));
            } else {
                neg.push((scaled, srhs));
            }
        }
    }
    // x0 <= pr - pc . x  and  x0 >= nr - nc . x  combine to
    // (pc - nc) . x <= pr - nr
    for (pc, pr) in &pos {
        for (nc, nr) in &neg {
            let coeffs: Vec<Rat> = pc.iter().zip(nc).map(|(p, n)| p - n).collect();
            out.push((coeffs, pr - nr));
        }
    }
    out
}

/// Bounds (max lower, min upper) that `system` puts on variable 0 once all
/// later variables are assigned `tail`.
fn fm_bounds_on_first(system: &[Ineq], tail: &[Rat]) -> (Option<Rat>, Option<Rat>) {
    let mut lo: Option<Rat> = None;
    let mut hi: Option<Rat> = None;
    for (coeffs, rhs) in system {
        let c0 = &coeffs[0];
        if c0.is_zero() {
            continue;
        }
        let rest: Rat = coeffs[1..].iter().zip(tail).map(|(c, v)| c * v).sum();
        let bound = (rhs - rest) / c0;
        if c0.is_positive() {
            hi = Some(match hi {
                Some(h) if h <= bound => h,
                _ => bound,
            });
        } else {
            lo = Some(match lo {
                Some(l) if l >= bound => l,
                _ => bound,
            });
        }
    }
    (lo, hi)
}

fn pick_in_interval(lo: &Option<Rat>, hi: &Option<Rat>) -> Rat {
    match (lo, hi) {
        (None, None) => Rat::zero(),
        (Some(l), None) => l.clone(),
        (None, Some(h)) => h.clone(),
        (Some(l), Some(h)) => (l + h) / rat_int(2),
    }
}

/// Feasibility of `system` over `nvars` variables; returns a witness.
fn fm_solve(system: Vec<Ineq>, nvars: usize) -> Option<Vec<Rat>> {
    let mut stack = vec![system];
    for _ in 0..nvars {
        let next = fm_eliminate_first(stack.last().unwrap());
        stack.push(next);
    }
    // variable-free system: every 0 <= rhs must hold
    if stack[nvars].iter().any(|(_, rhs)| rhs.is_negative()) {
        return None;
    }
    let mut assignment: Vec<Rat> = Vec::new();
    for k in (0..nvars).rev() {
        let (lo, hi) = fm_bounds_on_first(&stack[k], &assignment);
        if let (Some(l), Some(h)) = (&lo, &hi) {
            debug_assert!(l <= h, "inconsistent bounds after elimination");
        }
        assignment.insert(0, pick_in_interval(&lo, &hi));
    }
    Some(assignment)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GsMode {
    /// z strictly positive (open orthant)
    Positive,
    /// z nonpositive (closed orthant)
    Negative,
}

/// Concavity feasibility: an exact rational z with Q z = a and the sign
/// constraint of `mode`, or None when no such z exists.
pub fn gs_feasible(g: &AugmentedGraph, mode: GsMode) -> Result<Option<Vec<Rat>>> {
    let areas = g.areas()?;
    let q = intersection_matrix(g);
    match solve_linear(q.gram(), &areas) {
        LinSolution::Inconsistent => Ok(None),
        LinSolution::Unique(z) => {
            let ok = match mode {
                GsMode::Positive => z.iter().all(|x| x.is_positive()),
                GsMode::Negative => z.iter().all(|x| !x.is_positive()),
            };
            Ok(if ok { Some(z) } else { None })
        }
        LinSolution::Affine { particular, kernel } => {
            Ok(gs_affine(&particular, &kernel, mode))
        }
    }
}

/// Feasibility over the affine solution set z = z0 + K c.
fn gs_affine(z0: &[Rat], kernel: &[Vec<Rat>], mode: GsMode) -> Option<Vec<Rat>> {
    let n = z0.len();
    let r = kernel.len();
    match mode {
        GsMode::Negative => {
            // z0_i + sum_j c_j K_j[i] <= 0
            let system: Vec<Ineq> = (0..n)
                .map(|i| {
                    let coeffs: Vec<Rat> = kernel.iter().map(|k| k[i].clone()).collect();
                    (coeffs, -&z0[i])
                })
                .collect();
            let c = fm_solve(system, r)?;
            Some(combine(z0, kernel, &c))
        }
        GsMode::Positive => {
            // maximize t subject to z_i >= t: variables (c_1..c_r, t)
            let system: Vec<Ineq> = (0..n)
                .map(|i| {
                    let mut coeffs: Vec<Rat> =
                        kernel.iter().map(|k| -k[i].clone()).collect();
                    coeffs.push(Rat::one());
                    (coeffs, z0[i].clone())
                })
                .collect();
            let mut stack = vec![system];
            for _ in 0..r {
                let next = fm_eliminate_first(stack.last().unwrap());
                stack.push(next);
            }
            // system over t alone: alpha t <= beta
            let mut hi: Option<Rat> = None;
            let mut lo: Option<Rat> = None;
            for (coeffs, rhs) in &stack[r] {
                let a = &coeffs[0];
                if a.is_zero() {
                    if rhs.is_negative() {
                        return None;
                    }
                } else if a.is_positive() {
                    let b = rhs / a;
                    hi = Some(match hi {
                        Some(h) if h <= b => h,
                        _ => b,
                    });
                } else {
                    let b = rhs / a;
                    lo = Some(match lo {
                        Some(l) if l >= b => l,
                        _ => b,
                    });
                }
            }
            let t = match (&lo, &hi) {
                (_, Some(h)) if !h.is_positive() => return None, // sup t <= 0
                (Some(l), Some(h)) if l > h => return None,
                (_, Some(h)) => h.clone(),
                (Some(l), None) => {
                    if l > &Rat::one() {
                        l.clone()
                    } else {
                        Rat::one()
                    }
                }
                (None, None) => Rat::one(),
            };
            let mut assignment = vec![t];
            for k in (0..r).rev() {
                let (lo, hi) = fm_bounds_on_first(&stack[k], &assignment);
                assignment.insert(0, pick_in_interval(&lo, &hi));
            }
            let c = &assignment[..r];
            let z = combine(z0, kernel, c);
            debug_assert!(z.iter().all(|x| x.is_positive()));
            Some(z)
        }
    }
}

fn combine(z0: &[Rat], kernel: &[Vec<Rat>], c: &[Rat]) -> Vec<Rat> {
    (0..z0.len())
        .map(|i| {
            let mut v = z0[i].clone();
            for (cj, k) in c.iter().zip(kernel) {
                v += cj * &k[i];
            }
            v
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Concavity {
    Yes,
    No,
    /// Not negative definite but degenerate: boundary exactness not certified.
    Conditional,
}

impl Concavity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Concavity::Yes => "yes",
            Concavity::No => "no",
            Concavity::Conditional => "conditional",
        }
    }
}

pub fn concave_after_deformation(g: &AugmentedGraph) -> Concavity {
    let inv = form_invariants(&intersection_matrix(g));
    let negative_definite = inv.definiteness == Definiteness::NegativeDefinite;
    if negative_definite {
        Concavity::No
    } else if inv.is_nondegenerate() {
        Concavity::Yes
    } else {
        Concavity::Conditional
    }
}

/// Solution set of Q a_vec = kappa where kappa_i = s_i + 2 - 2 g_i.
#[derive(Clone, Debug)]
pub enum ChernSolution {
    Unique(Vec<Rat>),
    Affine { particular: Vec<Rat>, kernel: Vec<Vec<Rat>> },
    Inconsistent,
}

pub fn chern_coefficients(g: &AugmentedGraph) -> ChernSolution {
    let q = intersection_matrix(g);
    let kappa: Vec<Rat> = g.vertices.iter().map(|v| rat_int(v.kappa())).collect();
    match solve_linear(q.gram(), &kappa) {
        LinSolution::Unique(x) => ChernSolution::Unique(x),
        LinSolution::Affine { particular, kernel } => ChernSolution::Affine { particular, kernel },
        LinSolution::Inconsistent => ChernSolution::Inconsistent,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// Vertex id or resolved class description.
    pub subject: String,
    pub rule: String,
}

#[derive(Clone, Debug)]
pub struct CapClassification {
    pub is_calabi_yau: bool,
    pub uniruled: bool,
    pub adjunction: bool,
    pub concave: Concavity,
    pub certificates: Vec<Certificate>,
    /// The divisor pairing sum z . kappa when the positive concavity
    /// criterion is feasible (requires areas).
    pub gs_pairing: Option<Rat>,
}

pub fn classify_cap(g: &AugmentedGraph) -> CapClassification {
    let mut certificates = Vec::new();

    let is_calabi_yau = g
        .vertices
        .iter()
        .all(|v| v.self_intersection == 2 * v.genus as i64 - 2);
    if is_calabi_yau {
        certificates.push(Certificate {
            subject: "all vertices".into(),
            rule: "self-intersection 2g-2 at every vertex: c1 pairs to zero".into(),
        });
    }

    // uniruled: vertex route
    let mut uniruled = false;
    for v in g.vertices.iter() {
        if v.self_intersection >= 0 && v.kappa() > 0 {
            uniruled = true;
            certificates.push(Certificate {
                subject: v.id.clone(),
                rule: "nonnegative square and positive c1 pairing".into(),
            });
            break;
        }
    }

    // uniruled: divisor pairing route (needs areas and a positive solution)
    let mut gs_pairing = None;
    if g.vertices.iter().all(|v| v.area.is_some()) {
        if let Ok(Some(z)) = gs_feasible(g, GsMode::Positive) {
            let pairing: Rat = z
                .iter()
                .zip(g.vertices.iter())
                .map(|(zi, v)| zi * rat_int(v.kappa()))
                .sum();
            if pairing.is_positive() && !uniruled {
                uniruled = true;
                certificates.push(Certificate {
                    subject: "divisor class".into(),
                    rule: format!(
                        "positive pairing of c1 with the relative symplectic class: {}",
                        crate::matrix::format_rational(&pairing)
                    ),
                });
            }
            gs_pairing = Some(pairing);
        }
    }

    // adjunction: vertex classes, then pairwise resolutions along edges
    let mut adjunction = false;
    let passes = |s: &SurfaceClass| s.square >= (2 * s.genus as i64 - 1).max(0);
    for v in g.vertices.iter() {
        let sc = SurfaceClass { genus: v.genus as u64, square: v.self_intersection };
        if passes(&sc) {
            adjunction = true;
            certificates.push(Certificate {
                subject: v.id.clone(),
                rule: format!(
                    "embedded genus {} surface of square {} (at least max(2g-1, 0))",
                    sc.genus, sc.square
                ),
            });
            break;
        }
    }
    if !adjunction {
        'outer: for i in 0..g.vertices.len() {
            for j in i + 1..g.vertices.len() {
                let m = g.edge_multiplicity(i, j);
                if m == 0 {
                    continue;
                }
                let a = &g.vertices[i];
                let b = &g.vertices[j];
                let resolved = resolve_pair(
                    &SurfaceClass { genus: a.genus as u64, square: a.self_intersection },
                    &SurfaceClass { genus: b.genus as u64, square: b.self_intersection },
                    m as u64,
                )
                .expect("edge multiplicity is at least 1");
                if passes(&resolved) {
                    adjunction = true;
                    certificates.push(Certificate {
                        subject: format!("resolution of {} and {}", a.id, b.id),
                        rule: format!(
                            "resolved genus {} surface of square {} (at least max(2g-1, 0))",
                            resolved.genus, resolved.square
                        ),
                    });
                    break 'outer;
                }
            }
        }
    }

    CapClassification {
        is_calabi_yau,
        uniruled,
        adjunction,
        concave: concave_after_deformation(g),
        certificates,
        gs_pairing,
    }
}

// ---------------------------------------------------------------------------
// built-in graphs

/// Named example graphs. Areas are left unset.
pub fn builtin_graph(name: &str, params: &[i64]) -> Result<AugmentedGraph> {
    let need = |n: usize| {
        if params.len() == n {
            Ok(())
        } else {
            Err(Error::input(format!("'{name}' takes {n} parameter(s), got {}", params.len())))
        }
    };
    let genus = |p: i64| -> Result<u32> {
        u32::try_from(p).map_err(|_| Error::input("genus must be nonnegative"))
    };
    match name {
        "gay" => {
            need(2)?;
            let g = genus(params[0])?;
            AugmentedGraph::new(vec![Vertex::new("v1", g, params[1])], &[])
        }
        "lf" => {
            if params.len() < 2 {
                return Err(Error::input("'lf' takes genus, leg count and optional exponents"));
            }
            let g = genus(params[0])?;
            let k = usize::try_from(params[1])
                .map_err(|_| Error::input("leg count must be nonnegative"))?;
            let exponents: Vec<i64> = if params.len() == 2 {
                vec![1; k]
            } else {
                need(2 + k)?;
                params[2..].to_vec()
            };
            if exponents.iter().any(|&i| i < 1) {
                return Err(Error::input("boundary-twist exponents must be at least 1"));
            }
            let mut vertices = vec![Vertex::new("center", g, 0)];
            let mut edges = Vec::new();
            for (j, &i) in exponents.iter().enumerate() {
                let id = format!("leg{}", j + 1);
                vertices.push(Vertex::new(id.clone(), 0, -i));
                edges.push(("center".to_string(), id));
            }
            AugmentedGraph::new(vertices, &edges)
        }
        "cy_example" => {
            need(1)?;
            let g = genus(params[0])?;
            let mut vertices = vec![Vertex::new("center", g, 2 * g as i64 - 2)];
            let mut edges = Vec::new();
            for j in 1..=3 {
                let id = format!("leg{j}");
                vertices.push(Vertex::new(id.clone(), 0, -2));
                edges.push(("center".to_string(), id));
            }
            AugmentedGraph::new(vertices, &edges)
        }
        "ohta_ono" => {
            need(1)?;
            let n = params[0];
            if n < 1 {
                return Err(Error::input("'ohta_ono' needs n at least 1"));
            }
            let vertices = vec![
                Vertex::new("v1", 0, -1),
                Vertex::new("v2", 0, -3),
                Vertex::new("v3", 0, -2),
                Vertex::new("v4", 0, -n),
            ];
            let edges: Vec<(String, String)> = ["v2", "v3", "v4"]
                .iter()
                .map(|l| ("v1".to_string(), l.to_string()))
                .collect();
            AugmentedGraph::new(vertices, &edges)
        }
        "cp2_triangle" => {
            need(0)?;
            let vertices = (1..=3).map(|i| Vertex::new(format!("l{i}"), 0, 1)).collect();
            let edges = vec![
                ("l1".to_string(), "l2".to_string()),
                ("l2".to_string(), "l3".to_string()),
                ("l1".to_string(), "l3".to_string()),
            ];
            AugmentedGraph::new(vertices, &edges)
        }
        "fiber_section" => {
            need(2)?;
            let g = genus(params[0])?;
            AugmentedGraph::new(
                vec![Vertex::new("section", 0, 0), Vertex::new("fiber", g, params[1])],
                &[("section".to_string(), "fiber".to_string())],
            )
        }
        "adjunction_pair" => {
            need(2)?;
            let n = params[0];
            if n < 0 {
                return Err(Error::input("'adjunction_pair' needs n at least 0"));
            }
            AugmentedGraph::new(
                vec![Vertex::new("c1", 0, 0), Vertex::new("c2", genus(2 * n)?, params[1])],
                &[
                    ("c1".to_string(), "c2".to_string()),
                    ("c1".to_string(), "c2".to_string()),
                ],
            )
        }
        _ => Err(Error::input(format!("unknown example graph '{name}'"))),
    }
}

pub const BUILTIN_GRAPH_NAMES: [&str; 7] =
    ["gay", "lf", "cy_example", "ohta_ono", "cp2_triangle", "fiber_section", "adjunction_pair"];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::parse_rational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rats(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat_int(x)).collect()
    }

    #[test]
    fn intersection_matrices() {
        let g = builtin_graph("gay", &[3, 4]).unwrap();
        assert_eq!(intersection_matrix(&g).gram(), &IntMat::from_i64(&[vec![4]]));

        let g = builtin_graph("cy_example", &[2]).unwrap();
        let q = intersection_matrix(&g);
        assert_eq!(
            q.gram(),
            &IntMat::from_i64(&[
                vec![2, 1, 1, 1],
                vec![1, -2, 0, 0],
                vec![1, 0, -2, 0],
                vec![1, 0, 0, -2],
            ])
        );

        let g = builtin_graph("cp2_triangle", &[]).unwrap();
        let q = intersection_matrix(&g);
        assert_eq!(
            q.gram(),
            &IntMat::from_i64(&[vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 1]])
        );
    }

    #[test]
    fn graph_validation() {
        assert!(AugmentedGraph::new(vec![], &[]).is_err());
        // disconnected
        assert!(AugmentedGraph::new(
            vec![Vertex::new("a", 0, 0), Vertex::new("b", 0, 0)],
            &[]
        )
        .is_err());
        // self-loop
        assert!(AugmentedGraph::new(
            vec![Vertex::new("a", 0, 0)],
            &[("a".to_string(), "a".to_string())]
        )
        .is_err());
        // duplicate id
        assert!(AugmentedGraph::new(
            vec![Vertex::new("a", 0, 0), Vertex::new("a", 1, 0)],
            &[]
        )
        .is_err());
    }

    #[test]
    fn lf_topology() {
        for g in 1..=6u32 {
            for k in 1..=8i64 {
                let graph = builtin_graph("lf", &[g as i64, k]).unwrap();
                let t = plumbing_topology(&graph);
                assert_eq!(t.e, 2 - 2 * g as i64 + k);
                assert_eq!(t.sigma, 1 - k);
                assert_eq!(t.e + t.sigma, 3 - 2 * g as i64);
            }
        }
        // varying exponents does not change e + sigma
        let graph = builtin_graph("lf", &[2, 3, 2, 5, 1]).unwrap();
        let t = plumbing_topology(&graph);
        assert_eq!(t.e + t.sigma, -1);
    }

    #[test]
    fn gay_boundary_homology() {
        for g in 2..=6u32 {
            let graph = builtin_graph("gay", &[g as i64, 2 * g as i64 - 2]).unwrap();
            let t = plumbing_topology(&graph);
            assert_eq!(t.boundary_h1.free_rank, 2 * g as usize);
            assert_eq!(t.boundary_h1.torsion_coefficients, vec![2 * g as u64 - 2]);
        }
    }

    #[test]
    fn triangle_boundary() {
        let g = builtin_graph("cp2_triangle", &[]).unwrap();
        let t = plumbing_topology(&g);
        assert_eq!(t.boundary_b1, 3);
        assert_eq!(t.betti, (1, 1, 3, 0));
    }

    #[test]
    fn gs_triangle() {
        let g = builtin_graph("cp2_triangle", &[]).unwrap();
        let eq = g.with_areas(&rats(&[1, 1, 1])).unwrap();
        let z = gs_feasible(&eq, GsMode::Positive).unwrap().unwrap();
        assert_eq!(z, vec![parse_rational("1/3").unwrap(); 3]);

        let uneq = g.with_areas(&rats(&[1, 2, 1])).unwrap();
        assert!(gs_feasible(&uneq, GsMode::Positive).unwrap().is_none());
        assert!(gs_feasible(&uneq, GsMode::Negative).unwrap().is_none());
    }

    #[test]
    fn gs_ohta_ono() {
        let g = builtin_graph("ohta_ono", &[3])
            .unwrap()
            .with_areas(&rats(&[3, 1, 1, 1]))
            .unwrap();
        let z = gs_feasible(&g, GsMode::Positive).unwrap().unwrap();
        assert_eq!(z, rats(&[25, 8, 12, 8]));
    }

    #[test]
    fn gs_requires_areas() {
        let g = builtin_graph("ohta_ono", &[3]).unwrap();
        assert!(gs_feasible(&g, GsMode::Positive).is_err());
    }

    #[test]
    fn gs_degenerate_cases() {
        // ohta_ono(6) is degenerate with kernel (6,2,3,1); the image of Q is
        // orthogonal to that kernel, so no positive area vector is reachable.
        let g = builtin_graph("ohta_ono", &[6]).unwrap();
        let q = intersection_matrix(&g);
        let kernel = [6i64, 2, 3, 1].map(Int::from);
        assert!(q.gram().mul_vec(&kernel).iter().all(|x| x.is_zero()));
        let eq = g.with_areas(&rats(&[1, 1, 1, 1])).unwrap();
        assert!(gs_feasible(&eq, GsMode::Positive).unwrap().is_none());
        assert!(gs_feasible(&eq, GsMode::Negative).unwrap().is_none());

        // a degenerate form whose positive problem is feasible
        let pair = AugmentedGraph::new(
            vec![Vertex::new("a", 0, 1), Vertex::new("b", 0, 1)],
            &[("a".to_string(), "b".to_string())],
        )
        .unwrap()
        .with_areas(&rats(&[2, 2]))
        .unwrap();
        let z = gs_feasible(&pair, GsMode::Positive).unwrap().unwrap();
        assert_eq!(z, rats(&[1, 1]));
    }

    #[test]
    fn fm_agrees_with_direct_on_nondegenerate() {
        // route the same random systems through both the direct sign test and
        // the affine elimination path (forced by padding with a zero column)
        // and require identical feasibility verdicts.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let n = rng.gen_range(1..=4);
            let mut rows: Vec<Vec<i64>> = vec![vec![0; n]; n];
            for i in 0..n {
                for j in i..n {
                    let v = rng.gen_range(-3i64..=3);
                    rows[i][j] = v;
                    rows[j][i] = v;
                }
            }
            let q = IntMat::from_i64(&rows);
            let a: Vec<Rat> = (0..n).map(|_| rat_int(rng.gen_range(1i64..=5))).collect();
            let direct = match solve_linear(&q, &a) {
                LinSolution::Unique(z) => {
                    if z.iter().all(|x| x.is_positive()) {
                        Some(z)
                    } else {
                        None
                    }
                }
                LinSolution::Affine { particular, kernel } => {
                    gs_affine(&particular, &kernel, GsMode::Positive)
                }
                LinSolution::Inconsistent => None,
            };
            // re-derive through the affine machinery with a trivial kernel:
            // pad the system with a zero column to force the affine branch.
            let mut padded = IntMat::zeros(n, n + 1);
            for i in 0..n {
                for j in 0..n {
                    padded.set(i, j, q.get(i, j).clone());
                }
            }
            let via_fm = match solve_linear(&padded, &a) {
                LinSolution::Affine { particular, kernel } => {
                    let kernel: Vec<Vec<Rat>> = kernel.iter().map(|k| k[..n].to_vec()).collect();
                    gs_affine(&particular[..n], &kernel, GsMode::Positive)
                }
                LinSolution::Unique(z) => Some(z[..n].to_vec()),
                LinSolution::Inconsistent => None,
            };
            // both paths must agree on feasibility
            assert_eq!(direct.is_some(), via_fm.is_some(), "matrix {rows:?} a {a:?}");
            if let Some(z) = direct {
                let qr = q.to_rational();
                for (i, row) in qr.iter().enumerate() {
                    let lhs: Rat = row.iter().zip(&z).map(|(c, zi)| c * zi).sum();
                    assert_eq!(lhs, a[i]);
                }
            }
        }
    }

    #[test]
    fn concavity_examples() {
        for n in [3, 4, 5] {
            let g = builtin_graph("ohta_ono", &[n]).unwrap();
            assert_eq!(concave_after_deformation(&g), Concavity::Yes);
        }
        let g = builtin_graph("ohta_ono", &[6]).unwrap();
        assert_eq!(concave_after_deformation(&g), Concavity::Conditional);
        let g = builtin_graph("gay", &[0, -1]).unwrap();
        assert_eq!(concave_after_deformation(&g), Concavity::No);
    }

    #[test]
    fn chern_examples() {
        for n in [3, 4, 5, 7, 8] {
            let g = builtin_graph("ohta_ono", &[n]).unwrap();
            match chern_coefficients(&g) {
                ChernSolution::Unique(x) => assert_eq!(x, rats(&[2, 1, 1, 1])),
                other => panic!("expected unique solution, got {other:?}"),
            }
        }
        let g = builtin_graph("cy_example", &[3]).unwrap();
        match chern_coefficients(&g) {
            ChernSolution::Unique(x) => assert_eq!(x, rats(&[0, 0, 0, 0])),
            other => panic!("expected zero solution, got {other:?}"),
        }
        let g = builtin_graph("gay", &[0, 5]).unwrap();
        match chern_coefficients(&g) {
            ChernSolution::Unique(x) => assert_eq!(x, vec![parse_rational("7/5").unwrap()]),
            other => panic!("expected unique solution, got {other:?}"),
        }
        // degenerate but consistent: ohta_ono(6) has kappa orthogonal check
        let g = builtin_graph("ohta_ono", &[6]).unwrap();
        match chern_coefficients(&g) {
            ChernSolution::Affine { particular, kernel } => {
                assert_eq!(kernel.len(), 1);
                let q = intersection_matrix(&g);
                let qr = q.gram().to_rational();
                for (i, row) in qr.iter().enumerate() {
                    let lhs: Rat = row.iter().zip(&particular).map(|(c, x)| c * x).sum();
                    assert_eq!(lhs, rat_int(g.vertices()[i].kappa()));
                }
            }
            ChernSolution::Inconsistent => {} // also acceptable only if kappa not in image
            other => panic!("expected affine solution, got {other:?}"),
        }
    }

    #[test]
    fn classification_examples() {
        for g in 2..=10 {
            let graph = builtin_graph("cy_example", &[g]).unwrap();
            assert!(classify_cap(&graph).is_calabi_yau);
            let gay = builtin_graph("gay", &[g, 2 * g - 2]).unwrap();
            assert!(classify_cap(&gay).is_calabi_yau);
        }

        let g = builtin_graph("ohta_ono", &[3])
            .unwrap()
            .with_areas(&rats(&[3, 1, 1, 1]))
            .unwrap();
        let c = classify_cap(&g);
        assert!(c.uniruled);
        assert_eq!(c.gs_pairing, Some(rat_int(9)));
        assert!(!c.is_calabi_yau);

        let g = builtin_graph("adjunction_pair", &[2, -1]).unwrap();
        let c = classify_cap(&g);
        assert!(c.uniruled);
        assert!(c.adjunction);
    }

    #[test]
    fn classification_is_relabeling_invariant() {
        let g1 = builtin_graph("ohta_ono", &[3])
            .unwrap()
            .with_areas(&rats(&[3, 1, 1, 1]))
            .unwrap();
        // same graph, different vertex order and labels
        let vertices = vec![
            Vertex { id: "d".into(), genus: 0, self_intersection: -3, area: Some(rat_int(1)) },
            Vertex { id: "c".into(), genus: 0, self_intersection: -2, area: Some(rat_int(1)) },
            Vertex { id: "hub".into(), genus: 0, self_intersection: -1, area: Some(rat_int(3)) },
            Vertex { id: "a".into(), genus: 0, self_intersection: -3, area: Some(rat_int(1)) },
        ];
        let edges = vec![
            ("hub".to_string(), "d".to_string()),
            ("hub".to_string(), "c".to_string()),
            ("hub".to_string(), "a".to_string()),
        ];
        let g2 = AugmentedGraph::new(vertices, &edges).unwrap();
        let (c1, c2) = (classify_cap(&g1), classify_cap(&g2));
        assert_eq!(c1.is_calabi_yau, c2.is_calabi_yau);
        assert_eq!(c1.uniruled, c2.uniruled);
        assert_eq!(c1.adjunction, c2.adjunction);
        assert_eq!(c1.concave, c2.concave);
    }

    #[test]
    fn euler_consistency_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let g = random_connected_graph(&mut rng);
            let t = plumbing_topology(&g);
            let direct: i64 = g
                .vertices()
                .iter()
                .map(|v| 2 - 2 * v.genus as i64)
                .sum::<i64>()
                - g.edges().len() as i64;
            assert_eq!(t.e, direct);
            assert_eq!(t.e, 1 - t.betti.1 as i64 + t.betti.2 as i64);
            assert!(t.sigma.unsigned_abs() <= t.betti.2);
        }
    }

    pub fn random_connected_graph(rng: &mut ChaCha8Rng) -> AugmentedGraph {
        let n = rng.gen_range(1..=6);
        let vertices: Vec<Vertex> = (0..n)
            .map(|i| Vertex::new(format!("v{i}"), rng.gen_range(0..3), rng.gen_range(-4i64..=4)))
            .collect();
        let mut edges: Vec<(String, String)> = Vec::new();
        for i in 1..n {
            let j = rng.gen_range(0..i);
            edges.push((format!("v{j}"), format!("v{i}")));
        }
        let extra = rng.gen_range(0..=3);
        for _ in 0..extra {
            if n < 2 {
                break;
            }
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n);
            while j == i {
                j = rng.gen_range(0..n);
            }
            edges.push((format!("v{i}"), format!("v{j}")));
        }
        AugmentedGraph::new(vertices, &edges).unwrap()
    }

    #[test]
    fn cy_implies_zero_chern_on_nondegenerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..60 {
            let mut g = random_connected_graph(&mut rng);
            // force calabi-yau data
            let mut vertices = g.vertices().to_vec();
            for v in vertices.iter_mut() {
                v.self_intersection = 2 * v.genus as i64 - 2;
            }
            let edges: Vec<(String, String)> = g
                .edges()
                .iter()
                .map(|&(a, b)| (g.vertices()[a].id.clone(), g.vertices()[b].id.clone()))
                .collect();
            g = AugmentedGraph::new(vertices, &edges).unwrap();
            assert!(classify_cap(&g).is_calabi_yau);
            match chern_coefficients(&g) {
                ChernSolution::Unique(x) => assert!(x.iter().all(|c| c.is_zero())),
                ChernSolution::Affine { particular, .. } => {
                    // the zero vector must be in the solution set; the
                    // particular solution maps to kappa = 0 under Q
                    let q = intersection_matrix(&g);
                    let qr = q.gram().to_rational();
                    for row in &qr {
                        let lhs: Rat = row.iter().zip(&particular).map(|(c, x)| c * x).sum();
                        assert!(lhs.is_zero());
                    }
                }
                ChernSolution::Inconsistent => panic!("kappa = 0 is always consistent"),
            }
        }
    }

    #[test]
    fn builtin_param_errors() {
        assert!(builtin_graph("lf", &[1, 2, 0, 1]).is_err());
        assert!(builtin_graph("gay", &[1]).is_err());
        assert!(builtin_graph("nope", &[]).is_err());
        assert!(builtin_graph("gay", &[-1, 0]).is_err());
    }
}
