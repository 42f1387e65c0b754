//! Finite groups with closed-form irreducible representations.
//!
//! Three families are supported: direct products of cyclic groups, dihedral
//! groups of order 2n, and Heisenberg groups of order p^3 for prime p. Every
//! element is a short coordinate vector with a dense mixed-radix index (first
//! coordinate most significant), so states, characters, and transforms can
//! live in flat arrays. Representations are formula-backed objects that
//! produce unitary matrices on demand rather than stored tables.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::f64::consts::TAU;
use std::fmt;

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{domain_err, Error, Result};
use crate::numtheory::is_prime_u64;

/// Largest group that may be enumerated as a dense element list. Matches the
/// state-dimension cap used by the simulator modules.
const MAX_ENUM_ORDER: u64 = 1 << 20;
/// Cap for full subgroup-lattice enumeration.
const MAX_SUBGROUP_ORDER: u64 = 10_000;
/// Cap for materializing the |G| x |G| Fourier matrix.
const MAX_FOURIER_ORDER: u64 = 1024;
/// Cap for materializing the full list of irreducible representations.
const MAX_IRREPS_ORDER: u64 = 1 << 16;

/// The supported group families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    /// Z_{n_1} x ... x Z_{n_k} under componentwise addition.
    Abelian { moduli: Vec<u64> },
    /// Order 2n: (x, 0) are rotations and (x, 1) reflections, with
    /// (x, a)(x', a') = (x + (-1)^a x' mod n, a + a' mod 2).
    Dihedral { n: u64 },
    /// Order p^3: triples (a, b, c) over Z_p with
    /// (a, b, c)(a', b', c') = (a + a' + b'c, b + b', c + c').
    Heisenberg { p: u64 },
}

/// A group element: coordinates in the mixed-radix system of its group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem {
    pub coords: Vec<u64>,
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A finite group with dense element indexing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    kind: GroupKind,
    radices: Vec<u64>,
    order: u64,
}

impl FiniteGroup {
    fn from_kind(kind: GroupKind) -> Result<FiniteGroup> {
        let radices = match &kind {
            GroupKind::Abelian { moduli } => moduli.clone(),
            GroupKind::Dihedral { n } => vec![*n, 2],
            GroupKind::Heisenberg { p } => vec![*p, *p, *p],
        };
        let mut order: u64 = 1;
        for &r in &radices {
            order = order
                .checked_mul(r)
                .ok_or_else(|| Error::TooLarge("group order overflows u64".into()))?;
        }
        Ok(FiniteGroup { kind, radices, order })
    }

    /// Direct product of cyclic groups with the given moduli.
    pub fn abelian(moduli: &[u64]) -> Result<FiniteGroup> {
        if moduli.is_empty() {
            return Err(domain_err!("abelian group needs at least one modulus"));
        }
        if moduli.iter().any(|&n| n == 0) {
            return Err(domain_err!("abelian group moduli must be positive"));
        }
        Self::from_kind(GroupKind::Abelian { moduli: moduli.to_vec() })
    }

    /// The cyclic group Z_n.
    pub fn cyclic(n: u64) -> Result<FiniteGroup> {
        Self::abelian(&[n])
    }

    /// The dihedral group of order 2n.
    pub fn dihedral(n: u64) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(domain_err!("dihedral group needs n >= 1"));
        }
        Self::from_kind(GroupKind::Dihedral { n })
    }

    /// The group of upper unitriangular 3x3 matrices over Z_p, order p^3.
    pub fn heisenberg(p: u64) -> Result<FiniteGroup> {
        if !is_prime_u64(p) {
            return Err(domain_err!("heisenberg group needs a prime modulus, got {p}"));
        }
        Self::from_kind(GroupKind::Heisenberg { p })
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Coordinate moduli of the dense element encoding.
    pub fn radices(&self) -> &[u64] {
        &self.radices
    }

    pub fn is_abelian(&self) -> bool {
        match &self.kind {
            GroupKind::Abelian { .. } => true,
            GroupKind::Dihedral { n } => *n <= 2,
            GroupKind::Heisenberg { .. } => false,
        }
    }

    pub fn identity(&self) -> GroupElem {
        GroupElem { coords: vec![0; self.radices.len()] }
    }

    /// Builds an element, reducing each coordinate modulo its radix.
    pub fn elem(&self, coords: &[u64]) -> Result<GroupElem> {
        if coords.len() != self.radices.len() {
            return Err(domain_err!(
                "element has {} coordinates, group expects {}",
                coords.len(),
                self.radices.len()
            ));
        }
        let coords = coords.iter().zip(&self.radices).map(|(&c, &r)| c % r).collect();
        Ok(GroupElem { coords })
    }

    fn validate(&self, x: &GroupElem) -> Result<()> {
        check_coords(&x.coords, &self.radices, "group element")
    }

    fn raw_index(&self, x: &GroupElem) -> u64 {
        let mut acc: u128 = 0;
        for (&c, &r) in x.coords.iter().zip(&self.radices) {
            acc = acc * r as u128 + c as u128;
        }
        acc as u64
    }

    /// Dense index of an element; the first coordinate is most significant.
    pub fn index_of(&self, x: &GroupElem) -> Result<u64> {
        self.validate(x)?;
        Ok(self.raw_index(x))
    }

    /// Inverse of `index_of`.
    pub fn from_index(&self, idx: u64) -> Result<GroupElem> {
        if idx >= self.order {
            return Err(domain_err!(
                "element index {idx} out of range for group of order {}",
                self.order
            ));
        }
        let mut coords = vec![0u64; self.radices.len()];
        let mut rem = idx;
        for (slot, &r) in coords.iter_mut().zip(self.radices.iter()).rev() {
            *slot = rem % r;
            rem /= r;
        }
        Ok(GroupElem { coords })
    }

    fn mul_unchecked(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        match &self.kind {
            GroupKind::Abelian { .. } => {
                let coords = a
                    .coords
                    .iter()
                    .zip(&b.coords)
                    .zip(&self.radices)
                    .map(|((&x, &y), &n)| ((x as u128 + y as u128) % n as u128) as u64)
                    .collect();
                GroupElem { coords }
            }
            GroupKind::Dihedral { n } => {
                let (x1, a1) = (a.coords[0], a.coords[1]);
                let (x2, a2) = (b.coords[0], b.coords[1]);
                // A reflection in the left factor flips the sign of the
                // incoming rotation amount.
                let x = if a1 == 0 {
                    ((x1 as u128 + x2 as u128) % *n as u128) as u64
                } else {
                    ((x1 as u128 + (*n - x2) as u128) % *n as u128) as u64
                };
                GroupElem { coords: vec![x, (a1 + a2) % 2] }
            }
            GroupKind::Heisenberg { p } => {
                let p = *p as u128;
                let (a1, b1, c1) = (a.coords[0] as u128, a.coords[1] as u128, a.coords[2] as u128);
                let (a2, b2, c2) = (b.coords[0] as u128, b.coords[1] as u128, b.coords[2] as u128);
                let first = (a1 + a2 + b2 * c1 % p) % p;
                GroupElem {
                    coords: vec![first as u64, ((b1 + b2) % p) as u64, ((c1 + c2) % p) as u64],
                }
            }
        }
    }

    fn inv_unchecked(&self, x: &GroupElem) -> GroupElem {
        match &self.kind {
            GroupKind::Abelian { .. } => {
                let coords =
                    x.coords.iter().zip(&self.radices).map(|(&c, &n)| (n - c) % n).collect();
                GroupElem { coords }
            }
            GroupKind::Dihedral { n } => {
                // Reflections are involutions; rotations invert by negation.
                if x.coords[1] == 0 {
                    GroupElem { coords: vec![(*n - x.coords[0]) % *n, 0] }
                } else {
                    GroupElem { coords: x.coords.clone() }
                }
            }
            GroupKind::Heisenberg { p } => {
                let p128 = *p as u128;
                let (a, b, c) = (x.coords[0], x.coords[1], x.coords[2]);
                // (a, b, c)^-1 = (-a + bc, -b, -c): the cross term restores
                // the commutator picked up when the factors swap.
                let first =
                    ((p128 - a as u128) % p128 + (b as u128 * c as u128) % p128) % p128;
                GroupElem { coords: vec![first as u64, (*p - b) % *p, (*p - c) % *p] }
            }
        }
    }
}

fn check_coords(coords: &[u64], radices: &[u64], what: &str) -> Result<()> {
    if coords.len() != radices.len() {
        return Err(domain_err!(
            "{what} has {} coordinates, expected {}",
            coords.len(),
            radices.len()
        ));
    }
    for (i, (&c, &r)) in coords.iter().zip(radices).enumerate() {
        if c >= r {
            return Err(domain_err!("{what}: coordinate {i} is {c}, must be below {r}"));
        }
    }
    Ok(())
}

/// exp(2 pi i num / den); callers pass `num` already reduced modulo `den`.
fn unit_root(num: u64, den: u64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * num as f64 / den as f64)
}

/// Group product. Both operands must be valid elements of `g`.
pub fn group_mul(g: &FiniteGroup, a: &GroupElem, b: &GroupElem) -> Result<GroupElem> {
    g.validate(a)?;
    g.validate(b)?;
    Ok(g.mul_unchecked(a, b))
}

/// Group inverse.
pub fn group_inv(g: &FiniteGroup, x: &GroupElem) -> Result<GroupElem> {
    g.validate(x)?;
    Ok(g.inv_unchecked(x))
}

/// All elements, in dense-index order.
pub fn enumerate(g: &FiniteGroup) -> Result<Vec<GroupElem>> {
    if g.order > MAX_ENUM_ORDER {
        return Err(Error::TooLarge(format!(
            "cannot enumerate group of order {}, cap is {MAX_ENUM_ORDER}",
            g.order
        )));
    }
    (0..g.order).map(|i| g.from_index(i)).collect()
}

/// An irreducible unitary representation, evaluated entrywise on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Irrep {
    pub label: String,
    pub dim: usize,
    kind: IrrepKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum IrrepKind {
    /// chi(x) = prod_i exp(2 pi i k_i x_i / n_i).
    AbelianChar { moduli: Vec<u64>, exps: Vec<u64> },
    /// A sign character (-1)^(sx*x + sa*a) of a dihedral group. The rotation
    /// sign sx is only a homomorphism when n is even.
    DihedralSign { n: u64, sx: bool, sa: bool },
    /// Two-dimensional dihedral representation with frequency h: rotations
    /// act as the phase pair diag(w^(hx), w^(-hx)) and reflections swap the
    /// two components.
    DihedralPlane { n: u64, h: u64 },
    /// chi(a, b, c) = w_p^(jb + kc); trivial on the center.
    HeisenbergChar { p: u64, j: u64, k: u64 },
    /// p-dimensional shift-and-phase representation: (a, b, c) maps basis
    /// vector s to w_p^(w(a + cs)) at position s + b, so the center acts by
    /// the global phase w_p^(wa).
    HeisenbergShift { p: u64, w: u64 },
}

impl Irrep {
    /// Unitary matrix of the representation at `x`.
    pub fn matrix_of(&self, x: &GroupElem) -> Result<Array2<Complex64>> {
        match &self.kind {
            IrrepKind::AbelianChar { moduli, exps } => {
                check_coords(&x.coords, moduli, "representation argument")?;
                let mut angle = 0.0f64;
                for ((&k, &c), &n) in exps.iter().zip(&x.coords).zip(moduli) {
                    angle += (k as u128 * c as u128 % n as u128) as f64 / n as f64;
                }
                Ok(Array2::from_elem((1, 1), Complex64::from_polar(1.0, TAU * angle)))
            }
            IrrepKind::DihedralSign { n, sx, sa } => {
                check_coords(&x.coords, &[*n, 2], "representation argument")?;
                let mut par = 0u64;
                if *sx {
                    par += x.coords[0];
                }
                if *sa {
                    par += x.coords[1];
                }
                let v = if par % 2 == 0 { 1.0 } else { -1.0 };
                Ok(Array2::from_elem((1, 1), Complex64::new(v, 0.0)))
            }
            IrrepKind::DihedralPlane { n, h } => {
                check_coords(&x.coords, &[*n, 2], "representation argument")?;
                let pos = (*h as u128 * x.coords[0] as u128 % *n as u128) as u64;
                let neg = (*n - pos) % *n;
                let wp = unit_root(pos, *n);
                let wn = unit_root(neg, *n);
                let z = Complex64::new(0.0, 0.0);
                if x.coords[1] == 0 {
                    Ok(ndarray::array![[wp, z], [z, wn]])
                } else {
                    Ok(ndarray::array![[z, wp], [wn, z]])
                }
            }
            IrrepKind::HeisenbergChar { p, j, k } => {
                check_coords(&x.coords, &[*p, *p, *p], "representation argument")?;
                let ph = ((*j as u128 * x.coords[1] as u128
                    + *k as u128 * x.coords[2] as u128)
                    % *p as u128) as u64;
                Ok(Array2::from_elem((1, 1), unit_root(ph, *p)))
            }
            IrrepKind::HeisenbergShift { p, w } => {
                check_coords(&x.coords, &[*p, *p, *p], "representation argument")?;
                let (a, b, c) = (x.coords[0], x.coords[1], x.coords[2]);
                let p128 = *p as u128;
                let mut m: Array2<Complex64> = Array2::zeros((*p as usize, *p as usize));
                for s in 0..*p {
                    let row = ((s + b) % *p) as usize;
                    let ph = *w as u128 * ((a as u128 + c as u128 * s as u128) % p128) % p128;
                    m[(row, s as usize)] = unit_root(ph as u64, *p);
                }
                Ok(m)
            }
        }
    }

    /// Trace of `matrix_of(x)`, via closed forms where available.
    pub fn character(&self, x: &GroupElem) -> Result<Complex64> {
        match &self.kind {
            IrrepKind::AbelianChar { .. }
            | IrrepKind::DihedralSign { .. }
            | IrrepKind::HeisenbergChar { .. } => Ok(self.matrix_of(x)?[(0, 0)]),
            IrrepKind::DihedralPlane { n, h } => {
                check_coords(&x.coords, &[*n, 2], "representation argument")?;
                if x.coords[1] != 0 {
                    return Ok(Complex64::new(0.0, 0.0));
                }
                let pos = (*h as u128 * x.coords[0] as u128 % *n as u128) as u64;
                let neg = (*n - pos) % *n;
                Ok(unit_root(pos, *n) + unit_root(neg, *n))
            }
            IrrepKind::HeisenbergShift { p, w } => {
                check_coords(&x.coords, &[*p, *p, *p], "representation argument")?;
                if x.coords[1] != 0 || x.coords[2] != 0 {
                    return Ok(Complex64::new(0.0, 0.0));
                }
                let ph = (*w as u128 * x.coords[0] as u128 % *p as u128) as u64;
                Ok(unit_root(ph, *p) * *p as f64)
            }
        }
    }
}

/// The complete list of irreducible representations, in a fixed order:
/// abelian characters in element-index order; dihedral sign characters then
/// plane representations by increasing frequency; Heisenberg characters in
/// (j, k) order then shift representations by central frequency.
pub fn irreps(g: &FiniteGroup) -> Result<Vec<Irrep>> {
    if g.order > MAX_IRREPS_ORDER {
        return Err(Error::TooLarge(format!(
            "irrep list for group of order {} exceeds cap {MAX_IRREPS_ORDER}",
            g.order
        )));
    }
    let mut out = Vec::new();
    match &g.kind {
        GroupKind::Abelian { moduli } => {
            for idx in 0..g.order {
                let exps = g.from_index(idx)?.coords;
                let label = format!(
                    "chi({})",
                    exps.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
                );
                out.push(Irrep {
                    label,
                    dim: 1,
                    kind: IrrepKind::AbelianChar { moduli: moduli.clone(), exps },
                });
            }
        }
        GroupKind::Dihedral { n } => {
            let n = *n;
            let mut signs = vec![("tt", false, false), ("ts", false, true)];
            if n % 2 == 0 {
                signs.push(("st", true, false));
                signs.push(("ss", true, true));
            }
            for (label, sx, sa) in signs {
                out.push(Irrep {
                    label: label.to_string(),
                    dim: 1,
                    kind: IrrepKind::DihedralSign { n, sx, sa },
                });
            }
            for h in 1..n.div_ceil(2) {
                out.push(Irrep {
                    label: format!("sigma_{h}"),
                    dim: 2,
                    kind: IrrepKind::DihedralPlane { n, h },
                });
            }
        }
        GroupKind::Heisenberg { p } => {
            let p = *p;
            for j in 0..p {
                for k in 0..p {
                    out.push(Irrep {
                        label: format!("tau({j},{k})"),
                        dim: 1,
                        kind: IrrepKind::HeisenbergChar { p, j, k },
                    });
                }
            }
            for w in 1..p {
                out.push(Irrep {
                    label: format!("sigma_{w}"),
                    dim: p as usize,
                    kind: IrrepKind::HeisenbergShift { p, w },
                });
            }
        }
    }
    Ok(out)
}

/// Character of `rep` at every element, in dense-index order.
pub fn character_vector(g: &FiniteGroup, rep: &Irrep) -> Result<Vec<Complex64>> {
    enumerate(g)?.iter().map(|x| rep.character(x)).collect()
}

/// Hermitian inner product (1/|G|) sum_x conj(a_x) b_x of two class functions
/// given as element-indexed vectors.
pub fn character_inner(g: &FiniteGroup, a: &[Complex64], b: &[Complex64]) -> Result<Complex64> {
    if a.len() as u64 != g.order || b.len() as u64 != g.order {
        return Err(domain_err!(
            "class function lengths {} and {} must both match group order {}",
            a.len(),
            b.len(),
            g.order
        ));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        acc += x.conj() * y;
    }
    Ok(acc / g.order as f64)
}

/// A subgroup given by generators, with its elements materialized.
///
/// `elements` is sorted by dense index and contains the identity; the
/// constructors maintain this invariant and the query methods rely on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub generators: Vec<GroupElem>,
    pub elements: Vec<GroupElem>,
}

impl Subgroup {
    /// Closure of the generating set under multiplication. An empty set
    /// generates the trivial subgroup.
    pub fn generate(g: &FiniteGroup, gens: &[GroupElem]) -> Result<Subgroup> {
        for x in gens {
            g.validate(x)?;
        }
        let e = g.identity();
        let mut seen: HashSet<u64> = HashSet::new();
        seen.insert(g.raw_index(&e));
        let mut queue: VecDeque<GroupElem> = VecDeque::new();
        queue.push_back(e);
        // Breadth-first closure: in a finite group, products of generators
        // starting from the identity already contain every inverse.
        while let Some(x) = queue.pop_front() {
            for h in gens {
                let y = g.mul_unchecked(&x, h);
                let yi = g.raw_index(&y);
                if seen.insert(yi) {
                    if seen.len() as u64 > MAX_ENUM_ORDER {
                        return Err(Error::TooLarge(format!(
                            "subgroup closure exceeded {MAX_ENUM_ORDER} elements"
                        )));
                    }
                    queue.push_back(y);
                }
            }
        }
        let mut idxs: Vec<u64> = seen.into_iter().collect();
        idxs.sort_unstable();
        let elements = idxs.into_iter().map(|i| g.from_index(i)).collect::<Result<Vec<_>>>()?;
        Ok(Subgroup { generators: gens.to_vec(), elements })
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    /// Membership test by binary search on the dense index.
    pub fn contains(&self, g: &FiniteGroup, x: &GroupElem) -> Result<bool> {
        g.validate(x)?;
        let xi = g.raw_index(x);
        Ok(self.elements.binary_search_by_key(&xi, |y| g.raw_index(y)).is_ok())
    }

    /// Whether conjugation by every group element fixes the subgroup. It is
    /// enough to conjugate by a generating set of the group: each such
    /// conjugation is an automorphism, so mapping the subgroup into itself
    /// means mapping it onto itself, and arbitrary words follow.
    pub fn is_normal(&self, g: &FiniteGroup) -> Result<bool> {
        for x in &self.elements {
            g.validate(x)?;
        }
        if g.is_abelian() {
            return Ok(true);
        }
        let member: HashSet<u64> = self.elements.iter().map(|x| g.raw_index(x)).collect();
        for c in group_generators(g) {
            let cinv = g.inv_unchecked(&c);
            for h in &self.elements {
                let conj = g.mul_unchecked(&g.mul_unchecked(&c, h), &cinv);
                if !member.contains(&g.raw_index(&conj)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// A fixed generating set of the whole group, used for normality checks.
fn group_generators(g: &FiniteGroup) -> Vec<GroupElem> {
    match &g.kind {
        GroupKind::Abelian { moduli } => {
            let mut gens = Vec::new();
            for (i, &n) in moduli.iter().enumerate() {
                if n > 1 {
                    let mut coords = vec![0u64; moduli.len()];
                    coords[i] = 1;
                    gens.push(GroupElem { coords });
                }
            }
            gens
        }
        GroupKind::Dihedral { n } => {
            let mut gens = vec![GroupElem { coords: vec![0, 1] }];
            if *n > 1 {
                gens.push(GroupElem { coords: vec![1, 0] });
            }
            gens
        }
        GroupKind::Heisenberg { .. } => vec![
            GroupElem { coords: vec![0, 1, 0] },
            GroupElem { coords: vec![0, 0, 1] },
        ],
    }
}

/// Every subgroup, complete up to element-set equality, sorted by order and
/// then by element indices. Each subgroup arises by extending a smaller one
/// with one new element, so generator chains stay logarithmically short.
pub fn subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    if g.order > MAX_SUBGROUP_ORDER {
        return Err(Error::TooLarge(format!(
            "subgroup enumeration for group of order {} exceeds cap {MAX_SUBGROUP_ORDER}",
            g.order
        )));
    }
    let trivial = Subgroup::generate(g, &[])?;
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut queue: VecDeque<Subgroup> = VecDeque::new();
    let mut found: Vec<Subgroup> = Vec::new();
    seen.insert(element_indices(g, &trivial));
    queue.push_back(trivial);
    while let Some(sub) = queue.pop_front() {
        let member: HashSet<u64> = sub.elements.iter().map(|x| g.raw_index(x)).collect();
        for cand in 0..g.order {
            if member.contains(&cand) {
                continue;
            }
            let mut gens = sub.generators.clone();
            gens.push(g.from_index(cand)?);
            let bigger = Subgroup::generate(g, &gens)?;
            let key = element_indices(g, &bigger);
            if seen.insert(key) {
                queue.push_back(bigger);
            }
        }
        found.push(sub);
    }
    found.sort_by_cached_key(|s| (s.elements.len(), element_indices(g, s)));
    Ok(found)
}

fn element_indices(g: &FiniteGroup, s: &Subgroup) -> Vec<u64> {
    s.elements.iter().map(|x| g.raw_index(x)).collect()
}

/// Unitary Fourier transform on the group algebra. Row (rep, j, k) with j
/// slow, column x, entry sqrt(dim/|G|) rep(x)[j, k]. Conjugating the left
/// regular representation by this matrix turns it into blocks
/// kron(rep(x), I), and the right regular representation into blocks
/// kron(I, conj(rep(x))).
pub fn fourier_matrix(g: &FiniteGroup) -> Result<Array2<Complex64>> {
    if g.order > MAX_FOURIER_ORDER {
        return Err(Error::TooLarge(format!(
            "dense Fourier matrix for group of order {} exceeds cap {MAX_FOURIER_ORDER}",
            g.order
        )));
    }
    let reps = irreps(g)?;
    let elems = enumerate(g)?;
    let n = g.order as usize;
    let mut f: Array2<Complex64> = Array2::zeros((n, n));
    for (col, x) in elems.iter().enumerate() {
        let mut row0 = 0usize;
        for rep in &reps {
            let m = rep.matrix_of(x)?;
            let scale = (rep.dim as f64 / n as f64).sqrt();
            for j in 0..rep.dim {
                for k in 0..rep.dim {
                    f[(row0 + j * rep.dim + k, col)] = m[(j, k)] * scale;
                }
            }
            row0 += rep.dim * rep.dim;
        }
    }
    Ok(f)
}

/// Distribution over representation labels from weak Fourier sampling a
/// uniform superposition over a coset of `h`: Pr(rep) = (dim/|G|) times the
/// conjugated character sum over the subgroup. The output is aligned with
/// `irreps(g)` and always sums to one.
pub fn wfs_distribution(g: &FiniteGroup, h: &Subgroup) -> Result<Vec<f64>> {
    if h.elements.is_empty() {
        return Err(domain_err!("subgroup element list is empty"));
    }
    for x in &h.elements {
        g.validate(x)?;
    }
    if !h.contains(g, &g.identity())? {
        return Err(domain_err!("subgroup element list must contain the identity"));
    }
    let reps = irreps(g)?;
    let mut out = Vec::with_capacity(reps.len());
    for rep in &reps {
        let mut acc = Complex64::new(0.0, 0.0);
        for x in &h.elements {
            acc += rep.character(x)?.conj();
        }
        // The sum counts |H| times the trivial component of the restricted
        // representation, so it is a nonnegative real up to rounding.
        debug_assert!(acc.im.abs() < 1e-9);
        let pr = rep.dim as f64 / g.order as f64 * acc.re;
        out.push(pr.max(0.0));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{cidentity, dagger, kron, max_abs_diff, unitarity_defect};

    fn el(g: &FiniteGroup, coords: &[u64]) -> GroupElem {
        g.elem(coords).unwrap()
    }

    fn test_groups() -> Vec<FiniteGroup> {
        vec![
            FiniteGroup::cyclic(6).unwrap(),
            FiniteGroup::abelian(&[2, 3]).unwrap(),
            FiniteGroup::abelian(&[2, 2, 2]).unwrap(),
            FiniteGroup::abelian(&[4, 4, 4]).unwrap(),
            FiniteGroup::dihedral(4).unwrap(),
            FiniteGroup::dihedral(5).unwrap(),
            FiniteGroup::heisenberg(3).unwrap(),
        ]
    }

    #[test]
    fn group_axioms_hold_exhaustively() {
        for g in test_groups() {
            let elems = enumerate(&g).unwrap();
            assert_eq!(elems.len() as u64, g.order());
            let e = g.identity();
            for x in &elems {
                assert_eq!(&group_mul(&g, &e, x).unwrap(), x);
                assert_eq!(&group_mul(&g, x, &e).unwrap(), x);
                let xi = group_inv(&g, x).unwrap();
                assert_eq!(group_mul(&g, x, &xi).unwrap(), e);
                assert_eq!(group_mul(&g, &xi, x).unwrap(), e);
            }
            for a in &elems {
                for b in &elems {
                    let ab = group_mul(&g, a, b).unwrap();
                    assert!(g.index_of(&ab).unwrap() < g.order());
                    for c in &elems {
                        let left = group_mul(&g, &ab, c).unwrap();
                        let right = group_mul(&g, a, &group_mul(&g, b, c).unwrap()).unwrap();
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }

    #[test]
    fn element_indexing_round_trips() {
        for g in test_groups() {
            for i in 0..g.order() {
                let x = g.from_index(i).unwrap();
                assert_eq!(g.index_of(&x).unwrap(), i);
            }
        }
        let d4 = FiniteGroup::dihedral(4).unwrap();
        assert_eq!(d4.index_of(&el(&d4, &[3, 1])).unwrap(), 7);
        assert_eq!(d4.from_index(2).unwrap(), el(&d4, &[1, 0]));
        assert!(enumerate(&FiniteGroup::cyclic(1 << 21).unwrap()).is_err());
    }

    #[test]
    fn mismatched_operands_are_rejected() {
        let z6 = FiniteGroup::cyclic(6).unwrap();
        let d4 = FiniteGroup::dihedral(4).unwrap();
        let bad_arity = el(&d4, &[1, 1]);
        assert!(group_mul(&z6, &el(&z6, &[2]), &bad_arity).is_err());
        assert!(group_inv(&z6, &bad_arity).is_err());
        let out_of_range = GroupElem { coords: vec![7] };
        assert!(group_mul(&z6, &el(&z6, &[1]), &out_of_range).is_err());
        assert!(z6.index_of(&out_of_range).is_err());
        assert!(z6.from_index(6).is_err());
        let reps = irreps(&d4).unwrap();
        assert!(reps[0].matrix_of(&el(&z6, &[1])).is_err());
        assert!(FiniteGroup::abelian(&[]).is_err());
        assert!(FiniteGroup::abelian(&[0]).is_err());
        assert!(FiniteGroup::dihedral(0).is_err());
        assert!(FiniteGroup::heisenberg(6).is_err());
    }

    #[test]
    fn products_match_hand_computed_values() {
        let d4 = FiniteGroup::dihedral(4).unwrap();
        assert_eq!(
            group_mul(&d4, &el(&d4, &[1, 0]), &el(&d4, &[0, 1])).unwrap(),
            el(&d4, &[1, 1])
        );
        assert_eq!(
            group_mul(&d4, &el(&d4, &[0, 1]), &el(&d4, &[1, 0])).unwrap(),
            el(&d4, &[3, 1])
        );
        assert_eq!(
            group_mul(&d4, &el(&d4, &[1, 1]), &el(&d4, &[1, 1])).unwrap(),
            d4.identity()
        );
        assert_eq!(group_inv(&d4, &el(&d4, &[3, 0])).unwrap(), el(&d4, &[1, 0]));
        assert_eq!(group_inv(&d4, &el(&d4, &[2, 1])).unwrap(), el(&d4, &[2, 1]));

        let h3 = FiniteGroup::heisenberg(3).unwrap();
        assert_eq!(
            group_mul(&h3, &el(&h3, &[1, 1, 0]), &el(&h3, &[0, 0, 1])).unwrap(),
            el(&h3, &[1, 1, 1])
        );
        assert_eq!(
            group_mul(&h3, &el(&h3, &[0, 0, 1]), &el(&h3, &[1, 1, 0])).unwrap(),
            el(&h3, &[2, 1, 1])
        );
        assert_eq!(group_inv(&h3, &el(&h3, &[1, 2, 1])).unwrap(), el(&h3, &[1, 1, 2]));
    }

    #[test]
    fn irrep_dimension_squares_sum_to_group_order() {
        for n in 1..=32u64 {
            let g = FiniteGroup::cyclic(n).unwrap();
            let total: usize = irreps(&g).unwrap().iter().map(|r| r.dim * r.dim).sum();
            assert_eq!(total as u64, g.order());
        }
        for n in 1..=16u64 {
            let g = FiniteGroup::dihedral(n).unwrap();
            let reps = irreps(&g).unwrap();
            let total: usize = reps.iter().map(|r| r.dim * r.dim).sum();
            assert_eq!(total as u64, g.order(), "dihedral n={n}");
            let labels: HashSet<&str> = reps.iter().map(|r| r.label.as_str()).collect();
            assert_eq!(labels.len(), reps.len());
        }
        for p in [3u64, 5, 7] {
            let g = FiniteGroup::heisenberg(p).unwrap();
            let reps = irreps(&g).unwrap();
            let total: usize = reps.iter().map(|r| r.dim * r.dim).sum();
            assert_eq!(total as u64, g.order(), "heisenberg p={p}");
            let labels: HashSet<&str> = reps.iter().map(|r| r.label.as_str()).collect();
            assert_eq!(labels.len(), reps.len());
        }
        let g = FiniteGroup::abelian(&[2, 4, 3]).unwrap();
        assert_eq!(irreps(&g).unwrap().len() as u64, g.order());
        assert!(irreps(&FiniteGroup::cyclic(1 << 17).unwrap()).is_err());
    }

    #[test]
    fn irreps_are_unitary_homomorphisms() {
        for g in [
            FiniteGroup::dihedral(3).unwrap(),
            FiniteGroup::dihedral(4).unwrap(),
            FiniteGroup::heisenberg(3).unwrap(),
            FiniteGroup::abelian(&[2, 4]).unwrap(),
        ] {
            let elems = enumerate(&g).unwrap();
            for rep in irreps(&g).unwrap() {
                for x in &elems {
                    assert!(unitarity_defect(&rep.matrix_of(x).unwrap()) < 1e-10);
                    let tr = rep.matrix_of(x).unwrap().diag().sum();
                    let ch = rep.character(x).unwrap();
                    assert!((tr - ch).norm() < 1e-10);
                }
                for a in &elems {
                    let ma = rep.matrix_of(a).unwrap();
                    for b in &elems {
                        let prod = ma.dot(&rep.matrix_of(b).unwrap());
                        let mab = rep.matrix_of(&group_mul(&g, a, b).unwrap()).unwrap();
                        assert!(max_abs_diff(&prod, &mab) < 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn regular_character_vanishes_off_identity() {
        for g in [
            FiniteGroup::dihedral(4).unwrap(),
            FiniteGroup::heisenberg(3).unwrap(),
            FiniteGroup::cyclic(6).unwrap(),
        ] {
            let reps = irreps(&g).unwrap();
            for (i, x) in enumerate(&g).unwrap().iter().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for rep in &reps {
                    acc += rep.character(x).unwrap() * rep.dim as f64;
                }
                let expect = if i == 0 { g.order() as f64 } else { 0.0 };
                assert!((acc - Complex64::new(expect, 0.0)).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn character_inner_products_are_orthonormal() {
        for g in [FiniteGroup::dihedral(6).unwrap(), FiniteGroup::heisenberg(3).unwrap()] {
            let reps = irreps(&g).unwrap();
            let tables: Vec<Vec<Complex64>> =
                reps.iter().map(|r| character_vector(&g, r).unwrap()).collect();
            for (i, a) in tables.iter().enumerate() {
                for (j, b) in tables.iter().enumerate() {
                    let ip = character_inner(&g, a, b).unwrap();
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((ip - Complex64::new(expect, 0.0)).norm() < 1e-10);
                }
            }
        }
        let d3 = FiniteGroup::dihedral(3).unwrap();
        let reps = irreps(&d3).unwrap();
        let t0 = character_vector(&d3, &reps[0]).unwrap();
        let t1 = character_vector(&d3, &reps[1]).unwrap();
        assert!(character_inner(&d3, &t0, &t1).unwrap().norm() < 1e-12);
        // The regular character of Z_2 is (2, 0); its self inner product is 2.
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let regular = vec![Complex64::new(2.0, 0.0), Complex64::new(0.0, 0.0)];
        let ip = character_inner(&z2, &regular, &regular).unwrap();
        assert!((ip - Complex64::new(2.0, 0.0)).norm() < 1e-12);
        assert!(character_inner(&z2, &regular, &regular[..1]).is_err());
    }

    #[test]
    fn matrix_entries_are_orthogonal_across_irreps() {
        for g in [FiniteGroup::dihedral(3).unwrap(), FiniteGroup::dihedral(4).unwrap()] {
            let reps = irreps(&g).unwrap();
            let elems = enumerate(&g).unwrap();
            let mats: Vec<Vec<Array2<Complex64>>> = reps
                .iter()
                .map(|r| elems.iter().map(|x| r.matrix_of(x).unwrap()).collect())
                .collect();
            for (ri, r1) in reps.iter().enumerate() {
                for (si, r2) in reps.iter().enumerate() {
                    for j in 0..r1.dim {
                        for k in 0..r1.dim {
                            for jj in 0..r2.dim {
                                for kk in 0..r2.dim {
                                    let mut acc = Complex64::new(0.0, 0.0);
                                    for xi in 0..elems.len() {
                                        acc += mats[ri][xi][(j, k)]
                                            * mats[si][xi][(jj, kk)].conj();
                                    }
                                    let expect = if ri == si && j == jj && k == kk {
                                        g.order() as f64 / r1.dim as f64
                                    } else {
                                        0.0
                                    };
                                    assert!((acc - Complex64::new(expect, 0.0)).norm() < 1e-9);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn subgroup_lattices_match_known_counts() {
        let cases: Vec<(FiniteGroup, usize)> = vec![
            (FiniteGroup::dihedral(4).unwrap(), 10),
            (FiniteGroup::dihedral(3).unwrap(), 6),
            (FiniteGroup::cyclic(6).unwrap(), 4),
            (FiniteGroup::abelian(&[2, 2, 2]).unwrap(), 16),
            (FiniteGroup::heisenberg(3).unwrap(), 19),
            (FiniteGroup::dihedral(6).unwrap(), 16),
        ];
        for (g, expect) in cases {
            let subs = subgroups(&g).unwrap();
            assert_eq!(subs.len(), expect, "group order {}", g.order());
            assert_eq!(subs.first().unwrap().order(), 1);
            assert_eq!(subs.last().unwrap().order(), g.order());
            for s in &subs {
                assert_eq!(g.order() % s.order(), 0);
                assert!(s.contains(&g, &g.identity()).unwrap());
                let regen = Subgroup::generate(&g, &s.generators).unwrap();
                assert_eq!(regen.elements, s.elements);
            }
        }
        assert!(subgroups(&FiniteGroup::cyclic(10_001).unwrap()).is_err());
    }

    #[test]
    fn normality_and_cyclic_subgroup_orders() {
        let d4 = FiniteGroup::dihedral(4).unwrap();
        let rot = Subgroup::generate(&d4, &[el(&d4, &[1, 0])]).unwrap();
        assert_eq!(rot.order(), 4);
        assert!(rot.is_normal(&d4).unwrap());
        let refl = Subgroup::generate(&d4, &[el(&d4, &[0, 1])]).unwrap();
        assert_eq!(refl.order(), 2);
        assert!(!refl.is_normal(&d4).unwrap());
        let center = Subgroup::generate(&d4, &[el(&d4, &[2, 0])]).unwrap();
        assert!(center.is_normal(&d4).unwrap());
        let diag_refl = Subgroup::generate(&d4, &[el(&d4, &[1, 1])]).unwrap();
        assert_eq!(diag_refl.order(), 2);
        assert_eq!(diag_refl.elements, vec![d4.identity(), el(&d4, &[1, 1])]);

        let h3 = FiniteGroup::heisenberg(3).unwrap();
        let hcenter = Subgroup::generate(&h3, &[el(&h3, &[1, 0, 0])]).unwrap();
        assert_eq!(hcenter.order(), 3);
        assert!(hcenter.is_normal(&h3).unwrap());
        for a in 0..3u64 {
            for b in 0..3u64 {
                let s = Subgroup::generate(&h3, &[el(&h3, &[a, b, 1])]).unwrap();
                assert_eq!(s.order(), 3, "generator ({a}, {b}, 1)");
            }
        }
        let z6 = FiniteGroup::cyclic(6).unwrap();
        for s in subgroups(&z6).unwrap() {
            assert!(s.is_normal(&z6).unwrap());
        }
    }

    #[test]
    fn fourier_matrix_is_unitary_and_block_diagonalizes_translations() {
        // Cyclic case: rows are exactly the discrete Fourier kernel.
        let z8 = FiniteGroup::cyclic(8).unwrap();
        let f8 = fourier_matrix(&z8).unwrap();
        let scale = (1.0f64 / 8.0).sqrt();
        for k in 0..8u64 {
            for x in 0..8u64 {
                let expect = unit_root(k * x % 8, 8) * scale;
                assert!((f8[(k as usize, x as usize)] - expect).norm() < 1e-12);
            }
        }
        for g in [FiniteGroup::dihedral(4).unwrap(), FiniteGroup::heisenberg(3).unwrap()] {
            assert!(unitarity_defect(&fourier_matrix(&g).unwrap()) < 1e-10);
        }

        let d3 = FiniteGroup::dihedral(3).unwrap();
        let f = fourier_matrix(&d3).unwrap();
        let fd = dagger(&f);
        let reps = irreps(&d3).unwrap();
        let elems = enumerate(&d3).unwrap();
        let n = elems.len();
        for x in &elems {
            let mut left: Array2<Complex64> = Array2::zeros((n, n));
            let mut right: Array2<Complex64> = Array2::zeros((n, n));
            let xinv = group_inv(&d3, x).unwrap();
            for y in &elems {
                let yi = d3.index_of(y).unwrap() as usize;
                let ly = d3.index_of(&group_mul(&d3, x, y).unwrap()).unwrap() as usize;
                let ry = d3.index_of(&group_mul(&d3, y, &xinv).unwrap()).unwrap() as usize;
                left[(ly, yi)] = Complex64::new(1.0, 0.0);
                right[(ry, yi)] = Complex64::new(1.0, 0.0);
            }
            let lhat = f.dot(&left).dot(&fd);
            let rhat = f.dot(&right).dot(&fd);
            let mut expect_l: Array2<Complex64> = Array2::zeros((n, n));
            let mut expect_r: Array2<Complex64> = Array2::zeros((n, n));
            let mut off = 0usize;
            for rep in &reps {
                let m = rep.matrix_of(x).unwrap();
                let bl = kron(&m, &cidentity(rep.dim));
                let br = kron(&cidentity(rep.dim), &m.mapv(|z| z.conj()));
                let d2 = rep.dim * rep.dim;
                for i in 0..d2 {
                    for j in 0..d2 {
                        expect_l[(off + i, off + j)] = bl[(i, j)];
                        expect_r[(off + i, off + j)] = br[(i, j)];
                    }
                }
                off += d2;
            }
            assert!(max_abs_diff(&lhat, &expect_l) < 1e-10);
            assert!(max_abs_diff(&rhat, &expect_r) < 1e-10);
        }
        assert!(fourier_matrix(&FiniteGroup::cyclic(2048).unwrap()).is_err());
    }

    #[test]
    fn subgroup_measurement_distribution_matches_closed_forms() {
        let d4 = FiniteGroup::dihedral(4).unwrap();
        let labels: Vec<String> =
            irreps(&d4).unwrap().into_iter().map(|r| r.label).collect();
        assert_eq!(labels, ["tt", "ts", "st", "ss", "sigma_1"]);

        let rot = Subgroup::generate(&d4, &[el(&d4, &[1, 0])]).unwrap();
        let probs = wfs_distribution(&d4, &rot).unwrap();
        for (p, e) in probs.iter().zip([0.5, 0.5, 0.0, 0.0, 0.0]) {
            assert!((p - e).abs() < 1e-12);
        }
        let center = Subgroup::generate(&d4, &[el(&d4, &[2, 0])]).unwrap();
        let probs = wfs_distribution(&d4, &center).unwrap();
        for (p, e) in probs.iter().zip([0.25, 0.25, 0.25, 0.25, 0.0]) {
            assert!((p - e).abs() < 1e-12);
        }
        let trivial = Subgroup::generate(&d4, &[]).unwrap();
        let probs = wfs_distribution(&d4, &trivial).unwrap();
        for (p, e) in probs.iter().zip([0.125, 0.125, 0.125, 0.125, 0.5]) {
            assert!((p - e).abs() < 1e-12);
        }

        let z6 = FiniteGroup::cyclic(6).unwrap();
        let h = Subgroup::generate(&z6, &[el(&z6, &[2])]).unwrap();
        let probs = wfs_distribution(&z6, &h).unwrap();
        for (p, e) in probs.iter().zip([0.5, 0.0, 0.0, 0.5, 0.0, 0.0]) {
            assert!((p - e).abs() < 1e-12);
        }

        for g in [
            FiniteGroup::dihedral(4).unwrap(),
            FiniteGroup::heisenberg(3).unwrap(),
            FiniteGroup::dihedral(6).unwrap(),
        ] {
            let reps = irreps(&g).unwrap();
            for s in subgroups(&g).unwrap() {
                let probs = wfs_distribution(&g, &s).unwrap();
                let total: f64 = probs.iter().sum();
                assert!((total - 1.0).abs() < 1e-10);
                // For a normal subgroup the weight sits uniformly on the
                // representations whose kernel contains it.
                if s.is_normal(&g).unwrap() {
                    for (rep, pr) in reps.iter().zip(&probs) {
                        let in_kernel = s.elements.iter().all(|x| {
                            (rep.character(x).unwrap()
                                - Complex64::new(rep.dim as f64, 0.0))
                            .norm()
                                < 1e-9
                        });
                        let expect = if in_kernel {
                            (rep.dim * rep.dim) as f64 * s.order() as f64 / g.order() as f64
                        } else {
                            0.0
                        };
                        assert!((pr - expect).abs() < 1e-9);
                    }
                }
            }
        }

        // Element lists that are not subgroups of the argument are rejected.
        let d4 = FiniteGroup::dihedral(4).unwrap();
        let z6 = FiniteGroup::cyclic(6).unwrap();
        let hz6 = Subgroup::generate(&z6, &[el(&z6, &[3])]).unwrap();
        assert!(wfs_distribution(&d4, &hz6).is_err());
        let no_identity =
            Subgroup { generators: vec![], elements: vec![el(&d4, &[1, 0])] };
        assert!(wfs_distribution(&d4, &no_identity).is_err());
    }
}
