//! Graph families and general edge-list graphs.
//!
//! Vertex numbering for `T(l, m)`: `a = 0`, `b = 1`, then the `l` middle
//! vertices on a's side, their `l` pendants, the `m` middle vertices on b's
//! side and their `m` pendants, each block in branch order. Branch `i` on a's
//! side therefore has middle `2 + i` and pendant `2 + l + i`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::Matrix;
use crate::scalar::Real;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("{what} must be at least 1, got {value}")]
    Domain { what: &'static str, value: usize },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge list line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown vertex role {0:?}")]
    UnknownRole(String),
}

/// Distinguished vertices of the double subdivided star.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl Role {
    pub const ALL: [Role; 6] = [Role::A, Role::B, Role::C, Role::D, Role::E, Role::F];

    pub fn as_str(self) -> &'static str {
        match self {
            Role::A => "a",
            Role::B => "b",
            Role::C => "c",
            Role::D => "d",
            Role::E => "e",
            Role::F => "f",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Role {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Role::ALL
            .into_iter()
            .find(|r| r.as_str() == s.trim())
            .ok_or_else(|| GraphError::UnknownRole(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    DoubleSubdividedStar { l: usize, m: usize },
    SubdividedStar { l: usize },
    Path { n: usize },
    General,
}

/// A simple undirected graph with optional vertex roles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    n: usize,
    edges: Vec<(usize, usize)>,
    labels: BTreeMap<Role, usize>,
    family: Family,
    /// Number of duplicate edges dropped by [`from_edge_list`].
    #[serde(skip)]
    duplicate_edges: usize,
}

fn nonzero(what: &'static str, value: usize) -> Result<(), GraphError> {
    if value < 1 {
        Err(GraphError::Domain { what, value })
    } else {
        Ok(())
    }
}

/// Index layout of `T(l, m)` under the crate's numbering convention.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StarLayout {
    pub l: usize,
    pub m: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// The side of `a`, carrying `l` branches.
    Left,
    /// The side of `b`, carrying `m` branches.
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Where a vertex sits in `T(l, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Position {
    Center(Side),
    Middle(Side, usize),
    Pendant(Side, usize),
}

impl StarLayout {
    pub fn new(l: usize, m: usize) -> Self {
        Self { l, m }
    }

    pub fn n(&self) -> usize {
        2 * self.l + 2 * self.m + 2
    }

    pub fn branches(&self, side: Side) -> usize {
        match side {
            Side::Left => self.l,
            Side::Right => self.m,
        }
    }

    pub fn center(&self, side: Side) -> usize {
        match side {
            Side::Left => 0,
            Side::Right => 1,
        }
    }

    pub fn middle(&self, side: Side, branch: usize) -> usize {
        debug_assert!(branch < self.branches(side));
        match side {
            Side::Left => 2 + branch,
            Side::Right => 2 + 2 * self.l + branch,
        }
    }

    pub fn pendant(&self, side: Side, branch: usize) -> usize {
        debug_assert!(branch < self.branches(side));
        match side {
            Side::Left => 2 + self.l + branch,
            Side::Right => 2 + 2 * self.l + self.m + branch,
        }
    }

    pub fn locate(&self, v: usize) -> Position {
        let (l, m) = (self.l, self.m);
        match v {
            0 => Position::Center(Side::Left),
            1 => Position::Center(Side::Right),
            v if v < 2 + l => Position::Middle(Side::Left, v - 2),
            v if v < 2 + 2 * l => Position::Pendant(Side::Left, v - 2 - l),
            v if v < 2 + 2 * l + m => Position::Middle(Side::Right, v - 2 - 2 * l),
            v if v < 2 + 2 * l + 2 * m => Position::Pendant(Side::Right, v - 2 - 2 * l - m),
            _ => panic!("vertex {v} outside T({l},{m})"),
        }
    }

    pub fn index_of(&self, p: Position) -> usize {
        match p {
            Position::Center(s) => self.center(s),
            Position::Middle(s, i) => self.middle(s, i),
            Position::Pendant(s, i) => self.pendant(s, i),
        }
    }

    /// Vertex `v` of `T(l, m)` seen as a vertex of `T(m, l)`.
    pub fn swap_sides(&self, v: usize) -> usize {
        let swapped = StarLayout::new(self.m, self.l);
        let p = match self.locate(v) {
            Position::Center(s) => Position::Center(s.other()),
            Position::Middle(s, i) => Position::Middle(s.other(), i),
            Position::Pendant(s, i) => Position::Pendant(s.other(), i),
        };
        swapped.index_of(p)
    }

    /// The `c, d, e, f` vertices on `side` (first two branches), if it has two branches.
    pub fn branch_roles(&self, side: Side) -> Option<[usize; 4]> {
        (self.branches(side) >= 2).then(|| {
            [
                self.pendant(side, 0),
                self.pendant(side, 1),
                self.middle(side, 0),
                self.middle(side, 1),
            ]
        })
    }
}

/// `T(l, m)`: two subdivided stars joined by an edge between their centers.
pub fn build_double_subdivided_star(l: usize, m: usize) -> Result<GraphSpec, GraphError> {
    nonzero("l", l)?;
    nonzero("m", m)?;
    let layout = StarLayout::new(l, m);
    let mut edges = vec![(0, 1)];
    for side in [Side::Left, Side::Right] {
        let c = layout.center(side);
        for i in 0..layout.branches(side) {
            let mid = layout.middle(side, i);
            edges.push((c, mid));
            edges.push((mid, layout.pendant(side, i)));
        }
    }
    let mut labels = BTreeMap::from([(Role::A, 0), (Role::B, 1)]);
    if let Some([c, d, e, f]) = layout.branch_roles(Side::Left) {
        labels.extend([(Role::C, c), (Role::D, d), (Role::E, e), (Role::F, f)]);
    }
    Ok(GraphSpec::assemble(
        layout.n(),
        edges,
        labels,
        Family::DoubleSubdividedStar { l, m },
    ))
}

/// `SK(1, l)`: `l` copies of a three-vertex path glued at one end; center is vertex 0.
pub fn build_subdivided_star(l: usize) -> Result<GraphSpec, GraphError> {
    nonzero("l", l)?;
    let mut edges = Vec::with_capacity(2 * l);
    for i in 0..l {
        edges.push((0, 1 + i));
        edges.push((1 + i, 1 + l + i));
    }
    Ok(GraphSpec::assemble(
        2 * l + 1,
        edges,
        BTreeMap::from([(Role::A, 0)]),
        Family::SubdividedStar { l },
    ))
}

/// Path on `n` vertices in order `0 - 1 - ... - n-1`; endpoints are `a` and `b`.
pub fn build_path(n: usize) -> Result<GraphSpec, GraphError> {
    nonzero("n", n)?;
    let edges = (1..n).map(|i| (i - 1, i)).collect();
    let mut labels = BTreeMap::from([(Role::A, 0)]);
    if n > 1 {
        labels.insert(Role::B, n - 1);
    }
    Ok(GraphSpec::assemble(n, edges, labels, Family::Path { n }))
}

/// General graph from an edge list. Duplicate edges are collapsed and counted.
pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<GraphSpec, GraphError> {
    let mut set = BTreeSet::new();
    let mut dupes = 0;
    for &(u, v) in edges {
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if !set.insert((u.min(v), u.max(v))) {
            dupes += 1;
        }
    }
    let mut g = GraphSpec::assemble(n, set.into_iter().collect(), BTreeMap::new(), Family::General);
    g.duplicate_edges = dupes;
    Ok(g)
}

/// Parses the edge-list text format: first line `n`, then one `u v` pair per line.
/// Blank lines and lines starting with `#` are ignored.
pub fn parse_edge_list(text: &str) -> Result<GraphSpec, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, s)| (i + 1, s.trim()))
        .filter(|(_, s)| !s.is_empty() && !s.starts_with('#'));
    let (line, first) = lines.next().ok_or(GraphError::Parse {
        line: 1,
        msg: "missing vertex count".into(),
    })?;
    let n: usize = first.parse().map_err(|_| GraphError::Parse {
        line,
        msg: format!("expected vertex count, got {first:?}"),
    })?;
    let mut edges = Vec::new();
    for (line, s) in lines {
        let mut it = s.split_whitespace().map(str::parse::<usize>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(u)), Some(Ok(v)), None) => edges.push((u, v)),
            _ => {
                return Err(GraphError::Parse {
                    line,
                    msg: format!("expected two vertex indices, got {s:?}"),
                })
            }
        }
    }
    from_edge_list(n, &edges)
}

impl GraphSpec {
    fn assemble(n: usize, mut edges: Vec<(usize, usize)>, labels: BTreeMap<Role, usize>, family: Family) -> Self {
        for e in edges.iter_mut() {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
        edges.sort_unstable();
        Self {
            n,
            edges,
            labels,
            family,
            duplicate_edges: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn labels(&self) -> &BTreeMap<Role, usize> {
        &self.labels
    }

    pub fn label(&self, role: Role) -> Option<usize> {
        self.labels.get(&role).copied()
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn duplicate_edges(&self) -> usize {
        self.duplicate_edges
    }

    /// Layout helper when this graph is a double subdivided star.
    pub fn star_layout(&self) -> Option<StarLayout> {
        match self.family {
            Family::DoubleSubdividedStar { l, m } => Some(StarLayout::new(l, m)),
            _ => None,
        }
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = self.neighbors();
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n && self.is_connected()
    }

    /// Two-colouring (`false`/`true` per vertex) if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let adj = self.neighbors();
        let mut colour: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u].unwrap();
                for &v in &adj[u] {
                    match colour[v] {
                        None => {
                            colour[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(Option::unwrap).collect())
    }

    /// Dense real adjacency matrix.
    pub fn adjacency<T: Real>(&self) -> AdjacencyMatrix<T> {
        let mut m = Matrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            m[(u, v)] = T::one();
            m[(v, u)] = T::one();
        }
        AdjacencyMatrix(m)
    }

    /// Integer adjacency rows, for exact computations.
    pub fn adjacency_int(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.n]; self.n];
        for &(u, v) in &self.edges {
            m[u][v] = 1;
            m[v][u] = 1;
        }
        m
    }

    /// Renders the edge-list text format.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for (u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }

    /// Resolves a vertex token: a role name (`a`..`f`) or a 0-based index.
    pub fn resolve_vertex(&self, token: &str) -> Result<usize, GraphError> {
        let token = token.trim();
        if let Ok(v) = token.parse::<usize>() {
            return if v < self.n {
                Ok(v)
            } else {
                Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
            };
        }
        let role: Role = token.parse()?;
        self.label(role).ok_or_else(|| GraphError::UnknownRole(token.to_string()))
    }
}

/// Symmetric 0/1 adjacency matrix with zero diagonal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdjacencyMatrix<T>(pub Matrix<T>);

impl<T: Real> AdjacencyMatrix<T> {
    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.0
    }

    pub fn row_sums(&self) -> Vec<T> {
        (0..self.n()).map(|i| self.0.row(i).iter().copied().sum()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degree_multiset(g: &GraphSpec) -> Vec<usize> {
        let mut d = g.degrees();
        d.sort_unstable();
        d
    }

    #[test]
    fn t11_is_the_six_vertex_path() {
        let g = build_double_subdivided_star(1, 1).unwrap();
        assert_eq!(g.family(), Family::DoubleSubdividedStar { l: 1, m: 1 });
        assert_eq!(g.n(), 6);
        assert!(g.is_tree());
        assert_eq!(degree_multiset(&g), vec![1, 1, 2, 2, 2, 2]);
        assert_eq!(g.label(Role::C), None);
    }

    #[test]
    fn t22_counts() {
        let g = build_double_subdivided_star(2, 2).unwrap();
        assert_eq!((g.n(), g.edges().len()), (10, 9));
        let deg = g.degrees();
        assert_eq!((deg[0], deg[1]), (3, 3));
        assert_eq!(g.label(Role::C), Some(4));
        assert_eq!(g.label(Role::D), Some(5));
        assert_eq!(g.label(Role::E), Some(2));
        assert_eq!(g.label(Role::F), Some(3));
    }

    #[test]
    fn t35_degree_sequence() {
        let g = build_double_subdivided_star(3, 5).unwrap();
        assert_eq!(g.n(), 18);
        let d = degree_multiset(&g);
        assert_eq!(d.iter().filter(|&&x| x == 1).count(), 8);
        assert_eq!(d.iter().filter(|&&x| x == 2).count(), 8);
        assert_eq!(&d[16..], &[4, 6]);
    }

    #[test]
    fn star_and_path_constructors() {
        assert_eq!(build_subdivided_star(1).unwrap().edges(), build_path(3).unwrap().edges());
        let sk4 = build_subdivided_star(4).unwrap();
        assert_eq!(sk4.n(), 9);
        assert_eq!(sk4.degrees().iter().filter(|&&d| d == 4).count(), 1);
        let p2 = build_path(2).unwrap();
        assert_eq!(p2.edges(), &[(0, 1)]);
        assert!(matches!(build_path(0), Err(GraphError::Domain { .. })));
        assert!(matches!(build_subdivided_star(0), Err(GraphError::Domain { .. })));
        assert!(matches!(build_double_subdivided_star(0, 3), Err(GraphError::Domain { .. })));
    }

    #[test]
    fn sk12_is_p5_up_to_relabeling() {
        let g = build_subdivided_star(2).unwrap();
        assert!(g.is_tree());
        assert_eq!(degree_multiset(&g), vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn edge_list_errors_and_duplicates() {
        let g = from_edge_list(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
        assert_eq!(g.duplicate_edges(), 1);
        assert_eq!(from_edge_list(2, &[(0, 2)]), Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 }));
        assert_eq!(from_edge_list(2, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        let c4 = from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(!c4.is_tree() && c4.is_connected());
        assert!(c4.bipartition().is_some());
        let k3 = from_edge_list(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(k3.bipartition().is_none());
    }

    #[test]
    fn edge_list_text_roundtrip() {
        let g = build_double_subdivided_star(2, 3).unwrap();
        let back = parse_edge_list(&g.to_edge_list()).unwrap();
        assert_eq!(back.edges(), g.edges());
        assert!(matches!(parse_edge_list("3\n0 1 2\n"), Err(GraphError::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list(""), Err(GraphError::Parse { .. })));
    }

    #[test]
    fn adjacency_small_cases() {
        let a = build_path(2).unwrap().adjacency::<f64>();
        assert_eq!(a.matrix().as_slice(), &[0.0, 1.0, 1.0, 0.0]);
        let g = build_double_subdivided_star(3, 2).unwrap();
        let a = g.adjacency::<f32>();
        assert!(a.matrix().is_symmetric(0.0));
        assert_eq!(a.matrix().trace(), 0.0);
        let deg: Vec<f32> = g.degrees().into_iter().map(|d| d as f32).collect();
        assert_eq!(a.row_sums(), deg);
    }

    #[test]
    fn json_shape() {
        let g = build_double_subdivided_star(2, 1).unwrap();
        let v: serde_json::Value = serde_json::from_str(&g.to_json()).unwrap();
        assert_eq!(v["n"], 8);
        assert_eq!(v["labels"]["c"], 4);
        assert_eq!(v["family"]["DoubleSubdividedStar"]["l"], 2);
        let back: GraphSpec = serde_json::from_str(&g.to_json()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn side_swap_is_an_isomorphism() {
        let g = build_double_subdivided_star(2, 4).unwrap();
        let h = build_double_subdivided_star(4, 2).unwrap();
        let lay = g.star_layout().unwrap();
        let mut mapped: Vec<_> = g
            .edges()
            .iter()
            .map(|&(u, v)| {
                let (x, y) = (lay.swap_sides(u), lay.swap_sides(v));
                (x.min(y), x.max(y))
            })
            .collect();
        mapped.sort_unstable();
        assert_eq!(mapped, h.edges());
    }

    #[test]
    fn resolve_tokens() {
        let g = build_double_subdivided_star(2, 2).unwrap();
        assert_eq!(g.resolve_vertex("c").unwrap(), 4);
        assert_eq!(g.resolve_vertex(" 7 ").unwrap(), 7);
        assert!(g.resolve_vertex("10").is_err());
        assert!(g.resolve_vertex("z").is_err());
    }
}
