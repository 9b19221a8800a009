//! Root data of simply-connected semisimple groups: Cartan matrices,
//! centers and diagram automorphisms. Nodes follow Bourbaki numbering
//! inside each factor; global indices concatenate factors in order.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// A simple Dynkin type in canonical form.
///
/// `C2` is stored as `B2` and `D3` as `A3`; `D2` is not a simple type
/// (see [`canonical_factors`]).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DynkinType {
    family: Family,
    rank: usize,
}

impl DynkinType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let invalid = || Error::InvalidType(format!("{}{}", family.letter(), rank));
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(invalid());
        }
        Ok(match (family, rank) {
            (Family::C, 2) => DynkinType { family: Family::B, rank: 2 },
            (Family::D, 3) => DynkinType { family: Family::A, rank: 3 },
            _ => DynkinType { family, rank },
        })
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Cartan matrix; column `j` holds the coordinates of the simple root
    /// `alpha_j` in the fundamental-weight basis, i.e. entry `(i, j)` is
    /// `<alpha_j, alpha_i^vee>`.
    pub fn cartan_matrix(self) -> IntMatrix {
        let n = self.rank;
        // Doubled squared lengths and doubled inner products of adjacent roots.
        let mut len = vec![2i64; n];
        let mut edges: Vec<(usize, usize, i64)> = Vec::new();
        match self.family {
            Family::A => edges.extend((0..n - 1).map(|i| (i, i + 1, -1))),
            Family::B => {
                len.iter_mut().for_each(|l| *l = 4);
                len[n - 1] = 2;
                edges.extend((0..n - 1).map(|i| (i, i + 1, -2)));
            }
            Family::C => {
                len[n - 1] = 4;
                edges.extend((0..n - 2).map(|i| (i, i + 1, -1)));
                edges.push((n - 2, n - 1, -2));
            }
            Family::D => {
                edges.extend((0..n - 2).map(|i| (i, i + 1, -1)));
                edges.push((n - 3, n - 1, -1));
            }
            Family::E => {
                edges.extend([(0, 2, -1), (1, 3, -1), (2, 3, -1)]);
                edges.extend((3..n - 1).map(|i| (i, i + 1, -1)));
            }
            Family::F => {
                len = vec![4, 4, 2, 2];
                edges = vec![(0, 1, -2), (1, 2, -2), (2, 3, -1)];
            }
            Family::G => {
                len = vec![2, 6];
                edges = vec![(0, 1, -3)];
            }
        }
        let mut c = IntMatrix::zeros(n, n);
        for i in 0..n {
            c[(i, i)] = BigInt::from(2);
        }
        for (a, b, ip) in edges {
            c[(a, b)] = BigInt::from(2 * ip / len[a]);
            c[(b, a)] = BigInt::from(2 * ip / len[b]);
        }
        c
    }

    /// Diagram automorphisms as node permutations (identity first).
    pub fn diagram_automorphisms(self) -> Vec<Vec<usize>> {
        let n = self.rank;
        let id: Vec<usize> = (0..n).collect();
        match (self.family, n) {
            (Family::A, n) if n >= 2 => vec![id.clone(), id.iter().rev().copied().collect()],
            (Family::D, 4) => [0usize, 2, 3]
                .iter()
                .copied()
                .permutations(3)
                .map(|p| {
                    let mut perm = id.clone();
                    for (src, dst) in [0usize, 2, 3].iter().zip(p) {
                        perm[*src] = dst;
                    }
                    perm
                })
                .sorted()
                .collect(),
            (Family::D, n) => {
                let mut s = id.clone();
                s.swap(n - 2, n - 1);
                vec![id, s]
            }
            (Family::E, 6) => vec![id, vec![5, 1, 4, 3, 2, 0]],
            _ => vec![id],
        }
    }

    /// The standard nontrivial diagram involution, if any: the flip for
    /// `A_n` and `E6`, and the swap of the two spin nodes for `D_n`.
    pub fn standard_involution(self) -> Option<Vec<usize>> {
        let n = self.rank;
        match self.family {
            Family::A if n >= 2 => Some((0..n).rev().collect()),
            Family::D => {
                let mut s: Vec<usize> = (0..n).collect();
                s.swap(n - 2, n - 1);
                Some(s)
            }
            Family::E if n == 6 => Some(vec![5, 1, 4, 3, 2, 0]),
            _ => None,
        }
    }

    /// Nodes whose fundamental weight is minuscule.
    pub fn minuscule_nodes(self) -> Vec<usize> {
        let n = self.rank;
        match self.family {
            Family::A => (0..n).collect(),
            Family::B => vec![n - 1],
            Family::C => vec![0],
            Family::D => vec![0, n - 2, n - 1],
            Family::E if n == 6 => vec![0, 5],
            Family::E if n == 7 => vec![6],
            _ => vec![],
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// Canonical simple factors for a (family, rank) pair, expanding `D2` into
/// `A1 x A1`.
pub fn canonical_factors(family: Family, rank: usize) -> Result<Vec<DynkinType>> {
    if family == Family::D && rank == 2 {
        let a1 = DynkinType::new(Family::A, 1)?;
        return Ok(vec![a1, a1]);
    }
    Ok(vec![DynkinType::new(family, rank)?])
}

/// Map from the numbering of `(family, rank)` as written to the node
/// numbering of its canonical type. Only `C2` and `D3` are renumbered.
pub fn canonical_node_map(family: Family, rank: usize) -> Vec<usize> {
    match (family, rank) {
        (Family::C, 2) => vec![1, 0],
        // D3 vector node is the middle node of A3; half-spin nodes are the ends.
        (Family::D, 3) => vec![1, 0, 2],
        _ => (0..rank).collect(),
    }
}

impl FromStr for DynkinType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam = chars.next().and_then(Family::from_letter).ok_or_else(|| Error::InvalidType(s.into()))?;
        let rank: usize = chars.as_str().parse().map_err(|_| Error::InvalidType(s.into()))?;
        DynkinType::new(fam, rank)
    }
}

/// A simply-connected semisimple group given by its simple factors, or a
/// torus of given rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Semisimple(Vec<DynkinType>),
    Torus(usize),
}

impl GroupSpec {
    pub fn semisimple(factors: Vec<DynkinType>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidType("empty factor list".into()));
        }
        Ok(GroupSpec::Semisimple(factors))
    }

    pub fn torus(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidType("torus of rank 0".into()));
        }
        Ok(GroupSpec::Torus(rank))
    }

    /// Parses a product like `A3`, `A1xA1`, `A2*A2` or `T3` (a torus).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(r) = s.strip_prefix('T') {
            let r: usize = r.parse().map_err(|_| Error::InvalidType(s.into()))?;
            return GroupSpec::torus(r);
        }
        let mut factors = Vec::new();
        for part in s.split(['x', '*', '×']) {
            let part = part.trim();
            let mut chars = part.chars();
            let fam = chars.next().and_then(Family::from_letter).ok_or_else(|| Error::InvalidType(part.into()))?;
            let rank: usize = chars.as_str().parse().map_err(|_| Error::InvalidType(part.into()))?;
            factors.extend(canonical_factors(fam, rank)?);
        }
        GroupSpec::semisimple(factors)
    }

    pub fn factors(&self) -> &[DynkinType] {
        match self {
            GroupSpec::Semisimple(f) => f,
            GroupSpec::Torus(_) => &[],
        }
    }

    pub fn is_semisimple(&self) -> bool {
        matches!(self, GroupSpec::Semisimple(_))
    }

    pub fn require_semisimple(&self) -> Result<&[DynkinType]> {
        match self {
            GroupSpec::Semisimple(f) => Ok(f),
            GroupSpec::Torus(_) => Err(Error::NotSemisimple),
        }
    }

    pub fn total_rank(&self) -> usize {
        match self {
            GroupSpec::Semisimple(f) => f.iter().map(|t| t.rank()).sum(),
            GroupSpec::Torus(r) => *r,
        }
    }

    /// Global index of the first node of each factor.
    pub fn factor_offsets(&self) -> Vec<usize> {
        let mut off = 0;
        self.factors()
            .iter()
            .map(|t| {
                let o = off;
                off += t.rank();
                o
            })
            .collect()
    }

    /// Factor index and local node of a global node.
    pub fn locate_node(&self, node: usize) -> Result<(usize, usize)> {
        let offs = self.factor_offsets();
        for (k, t) in self.factors().iter().enumerate() {
            if node >= offs[k] && node < offs[k] + t.rank() {
                return Ok((k, node - offs[k]));
            }
        }
        Err(Error::IndexError { index: node, len: self.total_rank() })
    }

    /// Block-diagonal Cartan matrix.
    pub fn cartan_matrix(&self) -> Result<IntMatrix> {
        let f = self.require_semisimple()?;
        Ok(IntMatrix::block_diagonal(&f.iter().map(|t| t.cartan_matrix()).collect::<Vec<_>>()))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Torus(r) => write!(f, "T{r}"),
            GroupSpec::Semisimple(fs) => write!(f, "{}", fs.iter().join("x")),
        }
    }
}

/// A weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector(pub Vec<BigInt>);

impl WeightVector {
    pub fn from_i64(v: &[i64]) -> Self {
        WeightVector(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn fundamental(rank: usize, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); rank];
        v[k] = BigInt::from(1);
        WeightVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `<chi, alpha_node^vee>`: the coordinate of `chi` at `node`.
pub fn weight_pairing(chi: &WeightVector, coroot_node: usize) -> Result<BigInt> {
    chi.0.get(coroot_node).cloned().ok_or(Error::IndexError { index: coroot_node, len: chi.len() })
}

fn frac_mod1(x: &BigRational) -> BigRational {
    x - x.floor()
}

/// An element of the center, written additively through its values on the
/// fundamental weights: entry `k` is `lambda_k(z)` in `Q/Z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CenterElement {
    q: Vec<BigRational>,
}

impl CenterElement {
    pub fn new(q: Vec<BigRational>) -> Self {
        CenterElement { q: q.iter().map(frac_mod1).collect() }
    }

    /// From `(numerator, denominator)` pairs.
    pub fn from_fractions(q: &[(i64, i64)]) -> Self {
        Self::new(q.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect())
    }

    pub fn zero(rank: usize) -> Self {
        CenterElement { q: vec![BigRational::zero(); rank] }
    }

    pub fn values(&self) -> &[BigRational] {
        &self.q
    }

    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.q.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &CenterElement) -> CenterElement {
        CenterElement::new(self.q.iter().zip(&other.q).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> CenterElement {
        CenterElement::new(self.q.iter().map(|a| -a).collect())
    }

    /// Concatenation, for products of factors.
    pub fn concat(parts: &[CenterElement]) -> CenterElement {
        CenterElement { q: parts.iter().flat_map(|p| p.q.iter().cloned()).collect() }
    }

    pub fn slice(&self, start: usize, len: usize) -> CenterElement {
        CenterElement { q: self.q[start..start + len].to_vec() }
    }

    /// `chi(z)` in `Q/Z`, normalized into `[0, 1)`.
    pub fn pair(&self, chi: &[BigInt]) -> BigRational {
        assert_eq!(chi.len(), self.q.len());
        let s: BigRational =
            chi.iter().zip(&self.q).map(|(c, q)| BigRational::from_integer(c.clone()) * q).sum();
        frac_mod1(&s)
    }

    /// Root relations: every simple root vanishes on the element.
    pub fn satisfies_root_relations(&self, cartan: &IntMatrix) -> bool {
        cartan.cols() == self.q.len()
            && (0..cartan.cols()).all(|j| {
                let col: Vec<BigInt> = (0..cartan.rows()).map(|i| cartan[(i, j)].clone()).collect();
                self.pair(&col).is_zero()
            })
    }

    /// Image under the real structure whose action on characters is
    /// `theta`: `q -> -theta q` (as a column vector).
    pub fn galois_image(&self, theta: &IntMatrix) -> CenterElement {
        let n = self.q.len();
        assert_eq!(theta.rows(), n);
        let q: Vec<BigRational> = (0..n)
            .map(|i| {
                let s: BigRational =
                    (0..n).map(|j| BigRational::from_integer(theta[(i, j)].clone()) * &self.q[j]).sum();
                -s
            })
            .collect();
        CenterElement::new(q)
    }

    pub fn is_galois_fixed(&self, theta: &IntMatrix) -> bool {
        &self.galois_image(theta) == self
    }

    /// Order of the element in `Q/Z^n`.
    pub fn order(&self) -> BigInt {
        self.q.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()))
    }
}

impl fmt::Display for CenterElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.q.iter().join(", "))
    }
}

/// All elements of the center of a simple factor: the subgroup of
/// `(Q/Z)^n` generated by the rows of the inverse Cartan matrix.
fn simple_center(t: DynkinType) -> Vec<CenterElement> {
    let c = t.cartan_matrix();
    let n = t.rank();
    // Rows of C^-1: solve e_i = x C for each i.
    let gens: Vec<CenterElement> = (0..n)
        .map(|i| {
            let e: Vec<BigInt> = (0..n).map(|j| BigInt::from((i == j) as i64)).collect();
            CenterElement::new(c.solve_left_rational(&e).expect("Cartan matrix is invertible"))
        })
        .collect();
    let mut seen: BTreeSet<CenterElement> = BTreeSet::new();
    let mut frontier = vec![CenterElement::zero(n)];
    seen.insert(CenterElement::zero(n));
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = x.add(g);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// All center elements of a semisimple group, in lexicographic order.
pub fn center_elements(g: &GroupSpec) -> Result<Vec<CenterElement>> {
    let factors = g.require_semisimple()?;
    let mut acc: Vec<Vec<CenterElement>> = vec![vec![]];
    for t in factors {
        let zs = simple_center(*t);
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                zs.iter().map(move |z| {
                    let mut p = prefix.clone();
                    p.push(z.clone());
                    p
                })
            })
            .collect();
    }
    let mut out: Vec<CenterElement> = acc.iter().map(|parts| CenterElement::concat(parts)).collect();
    out.sort();
    Ok(out)
}

/// An involutive permutation of global node indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeInvolution {
    perm: Vec<usize>,
}

impl NodeInvolution {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        if perm.iter().any(|&p| p >= n) || perm.iter().enumerate().any(|(i, &p)| perm[p] != i) {
            return Err(Error::InvalidStructure(format!("{perm:?} is not an involution")));
        }
        Ok(NodeInvolution { perm })
    }

    pub fn identity(n: usize) -> Self {
        NodeInvolution { perm: (0..n).collect() }
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn apply(&self, node: usize) -> usize {
        self.perm[node]
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Permutation matrix acting on fundamental-weight coordinates.
    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::permutation(&self.perm)
    }

    /// True iff the permutation is an automorphism of the diagram of `g`.
    pub fn preserves_diagram(&self, g: &GroupSpec) -> bool {
        let Ok(c) = g.cartan_matrix() else { return false };
        if self.perm.len() != c.rows() {
            return false;
        }
        let p = self.matrix();
        &(&p.transpose() * &c) * &p == c
    }
}

/// A conjugacy class of involutive diagram automorphisms.
#[derive(Clone, Debug)]
pub struct InvolutionClass {
    pub representative: NodeInvolution,
    pub members: Vec<NodeInvolution>,
    /// Per distinct factor type: (swapped pairs, fixed factors acted on
    /// nontrivially).
    pub signature: BTreeMap<DynkinType, (usize, usize)>,
}

/// Involutive permutations of `0..k` as lists of 2-cycles.
fn matchings(items: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let first = items[0];
    let rest = &items[1..];
    let mut out = matchings(rest);
    for (i, &partner) in rest.iter().enumerate() {
        let remaining: Vec<usize> = rest.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
        for mut m in matchings(&remaining) {
            m.insert(0, (first, partner));
            out.push(m);
        }
    }
    out
}

fn is_involutive(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &x)| p[x] == i)
}

/// Involution conjugacy class key for a node permutation of `g`.
fn signature(g: &GroupSpec, perm: &[usize]) -> BTreeMap<DynkinType, (usize, usize)> {
    let factors = g.factors();
    let offs = g.factor_offsets();
    let mut sig: BTreeMap<DynkinType, (usize, usize)> = factors.iter().map(|t| (*t, (0, 0))).collect();
    for (k, t) in factors.iter().enumerate() {
        let image = perm[offs[k]];
        let (target, _) = g.locate_node(image).expect("node in range");
        let e = sig.get_mut(t).expect("type present");
        if target == k {
            let local_id = (0..t.rank()).all(|i| perm[offs[k] + i] == offs[k] + i);
            if !local_id {
                e.1 += 1;
            }
        } else if target > k {
            e.0 += 1;
        }
    }
    sig
}

/// All involutive diagram automorphisms (identity included), grouped into
/// conjugacy classes of `Aut(Dyn(G))`.
///
/// Two involutions of a wreath product of diagram groups are conjugate iff
/// for every factor type they swap the same number of pairs and act
/// nontrivially on the same number of fixed factors; each simple type has
/// at most one class of nontrivial involutions.
pub fn diagram_involutions(g: &GroupSpec) -> Result<Vec<InvolutionClass>> {
    let factors = g.require_semisimple()?.to_vec();
    let offs = g.factor_offsets();
    let n = g.total_rank();

    // Enumerate all members.
    let by_type = factors.iter().enumerate().into_group_map_by(|(_, t)| **t);
    let mut per_type_choices: Vec<Vec<Vec<(usize, Vec<usize>)>>> = Vec::new();
    for (t, idxs) in by_type.iter().sorted_by_key(|(t, _)| **t) {
        let idxs: Vec<usize> = idxs.iter().map(|(k, _)| *k).collect();
        let auts = t.diagram_automorphisms();
        let invols: Vec<&Vec<usize>> = auts.iter().filter(|p| is_involutive(p)).collect();
        let mut choices = Vec::new();
        for m in matchings(&idxs) {
            let paired: HashSet<usize> = m.iter().flat_map(|&(a, b)| [a, b]).collect();
            let fixed: Vec<usize> = idxs.iter().copied().filter(|k| !paired.contains(k)).collect();
            // For each swapped pair choose phi; for each fixed factor an involution.
            let pair_opts = m.iter().map(|_| auts.iter()).multi_cartesian_product();
            let pair_opts: Vec<Vec<&Vec<usize>>> = if m.is_empty() { vec![vec![]] } else { pair_opts.collect() };
            let fixed_opts: Vec<Vec<&&Vec<usize>>> = if fixed.is_empty() {
                vec![vec![]]
            } else {
                fixed.iter().map(|_| invols.iter()).multi_cartesian_product().collect()
            };
            for po in &pair_opts {
                for fo in &fixed_opts {
                    // (factor, local map to the target factor's nodes)
                    let mut assign: Vec<(usize, Vec<usize>)> = Vec::new();
                    for (&(a, b), phi) in m.iter().zip(po) {
                        let inv = invert(phi);
                        assign.push((a, phi.iter().map(|&x| offs[b] + x).collect()));
                        assign.push((b, inv.iter().map(|&x| offs[a] + x).collect()));
                    }
                    for (&k, sigma) in fixed.iter().zip(fo) {
                        assign.push((k, sigma.iter().map(|&x| offs[k] + x).collect()));
                    }
                    choices.push(assign);
                }
            }
        }
        per_type_choices.push(choices);
    }
    let mut members: Vec<NodeInvolution> = Vec::new();
    for combo in per_type_choices.iter().map(|c| c.iter()).multi_cartesian_product() {
        let mut perm = vec![0; n];
        for assign in combo {
            for (k, images) in assign {
                for (i, &img) in images.iter().enumerate() {
                    perm[offs[*k] + i] = img;
                }
            }
        }
        members.push(NodeInvolution::new(perm)?);
    }

    let mut classes: BTreeMap<Vec<(DynkinType, (usize, usize))>, Vec<NodeInvolution>> = BTreeMap::new();
    for m in members {
        let key: Vec<_> = signature(g, m.perm()).into_iter().collect();
        classes.entry(key).or_default().push(m);
    }
    Ok(classes
        .into_iter()
        .map(|(key, mut members)| {
            members.sort();
            let signature: BTreeMap<_, _> = key.into_iter().collect();
            let representative = canonical_representative(g, &signature);
            debug_assert!(members.contains(&representative));
            InvolutionClass { representative, members, signature }
        })
        .collect())
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// Class representative: for each type, the first factors (in index order)
/// are paired consecutively with the identity identification, then the
/// next fixed factors carry the standard involution, the rest identity.
pub(crate) fn canonical_representative(
    g: &GroupSpec,
    signature: &BTreeMap<DynkinType, (usize, usize)>,
) -> NodeInvolution {
    let factors = g.factors();
    let offs = g.factor_offsets();
    let mut perm: Vec<usize> = (0..g.total_rank()).collect();
    for (t, &(pairs, nontrivial)) in signature {
        let idxs: Vec<usize> = factors.iter().enumerate().filter(|(_, f)| *f == t).map(|(k, _)| k).collect();
        for p in 0..pairs {
            let (a, b) = (idxs[2 * p], idxs[2 * p + 1]);
            for i in 0..t.rank() {
                perm[offs[a] + i] = offs[b] + i;
                perm[offs[b] + i] = offs[a] + i;
            }
        }
        let std = t.standard_involution();
        for &k in idxs.iter().skip(2 * pairs).take(nontrivial) {
            let s = std.as_ref().expect("nontrivial involution exists");
            for i in 0..t.rank() {
                perm[offs[k] + i] = offs[k] + s[i];
            }
        }
    }
    NodeInvolution { perm }
}

/// Order of the center of a simple factor, `|P/Q|`.
pub fn center_order(t: DynkinType) -> usize {
    t.cartan_matrix().det().to_usize().expect("small determinant")
}
