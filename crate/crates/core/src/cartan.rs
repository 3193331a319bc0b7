//! Finite-type Cartan and Weyl data.
//!
//! Everything downstream hangs off [`CartanData`]: the Cartan matrix, the
//! symmetrizers `d_i`, the weight lattice in the fundamental-weight basis,
//! and Weyl group elements with canonical reduced words. Weyl elements are
//! identified by their (faithful) action on the weight lattice, so equality
//! and hashing never depend on which word produced an element.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// 1-based Dynkin node index, matching the usual labelling `I = {1, ..., n}`.
pub type Node = usize;

type Rat = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl TypeLabel {
    pub fn parse(s: &str) -> Option<TypeLabel> {
        match s.trim() {
            "A" | "a" => Some(TypeLabel::A),
            "B" | "b" => Some(TypeLabel::B),
            "C" | "c" => Some(TypeLabel::C),
            "D" | "d" => Some(TypeLabel::D),
            "E" | "e" => Some(TypeLabel::E),
            "F" | "f" => Some(TypeLabel::F),
            "G" | "g" => Some(TypeLabel::G),
            _ => None,
        }
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            TypeLabel::A => 'A',
            TypeLabel::B => 'B',
            TypeLabel::C => 'C',
            TypeLabel::D => 'D',
            TypeLabel::E => 'E',
            TypeLabel::F => 'F',
            TypeLabel::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// Integral weight in the fundamental-weight basis: `coords[i-1]` is the
/// coefficient of `omega_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    coords: Vec<i64>,
}

impl Weight {
    pub fn zero(rank: usize) -> Weight {
        Weight {
            coords: vec![0; rank],
        }
    }

    pub fn new(coords: Vec<i64>) -> Weight {
        Weight { coords }
    }

    /// The fundamental weight `omega_i`.
    pub fn fundamental(i: Node, rank: usize) -> Weight {
        let mut coords = vec![0; rank];
        coords[i - 1] = 1;
        Weight { coords }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// Coefficient of `omega_i`.
    pub fn coord(&self, i: Node) -> i64 {
        self.coords[i - 1]
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Weight {
        Weight {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Weight {
            coords: self.coords.iter().map(|a| k * a).collect(),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " {} ", if c > 0 { "+" } else { "-" })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            let a = c.abs();
            if a != 1 {
                write!(f, "{a}*")?;
            }
            write!(f, "w{}", idx + 1)?;
            first = false;
        }
        Ok(())
    }
}

/// Square integer matrix acting on weights in the omega-basis.
/// Column `j` holds the image of `omega_{j+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Mat {
    n: usize,
    a: Vec<i64>,
}

impl Mat {
    fn identity(n: usize) -> Mat {
        let mut a = vec![0; n * n];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        Mat { n, a }
    }

    fn at(&self, row: usize, col: usize) -> i64 {
        self.a[row * self.n + col]
    }

    fn mul(&self, rhs: &Mat) -> Mat {
        let n = self.n;
        let mut a = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let v = self.at(i, k);
                if v == 0 {
                    continue;
                }
                for j in 0..n {
                    a[i * n + j] += v * rhs.at(k, j);
                }
            }
        }
        Mat { n, a }
    }

    fn apply(&self, w: &Weight) -> Weight {
        let n = self.n;
        let mut coords = vec![0; n];
        for (j, &c) in w.coords().iter().enumerate() {
            if c == 0 {
                continue;
            }
            for i in 0..n {
                coords[i] += c * self.at(i, j);
            }
        }
        Weight::new(coords)
    }

    fn is_identity(&self) -> bool {
        *self == Mat::identity(self.n)
    }
}

/// Weyl group element: the canonical (lexicographically least) reduced word
/// together with the cached action on the weight lattice.
///
/// Two elements compare equal iff their lattice actions coincide; the word is
/// a normal form derived from the action, so it is equal as well.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    word: Vec<Node>,
    mat: Mat,
}

impl WeylElement {
    /// Canonical reduced word (lexicographically least among all reduced words).
    pub fn word(&self) -> &[Node] {
        &self.word
    }

    #[allow(clippy::len_without_is_empty)] // is_identity plays that role
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Action on the weight lattice.
    pub fn act(&self, w: &Weight) -> Weight {
        self.mat.apply(w)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            write!(f, "e")
        } else {
            let parts: Vec<String> = self.word.iter().map(|i| format!("s{i}")).collect();
            write!(f, "{}", parts.join(""))
        }
    }
}

/// Finite-type root-system datum.
#[derive(Debug)]
pub struct CartanData {
    label: TypeLabel,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    d: Vec<i64>,
    r_vee: i64,
    h_vee: i64,
    bar: Vec<Node>,
    /// Inverse Cartan matrix (rational), used for alpha-basis coordinates.
    inv_cartan: Vec<Vec<Rat>>,
    /// All roots, in omega-coordinates.
    positive_roots: Vec<Weight>,
    negative_root_set: HashSet<Vec<i64>>,
    longest: WeylElement,
    simple_mats: Vec<Mat>,
}

impl CartanData {
    /// Build the Cartan/Weyl datum for a finite type of rank at most 8.
    pub fn new(label: TypeLabel, rank: usize) -> Result<CartanData, Error> {
        let bad = || Error::InvalidType {
            label: label.to_string(),
            rank,
        };
        let ok = match label {
            TypeLabel::A => (1..=8).contains(&rank),
            TypeLabel::B | TypeLabel::C => (2..=8).contains(&rank),
            TypeLabel::D => (4..=8).contains(&rank),
            TypeLabel::E => (6..=8).contains(&rank),
            TypeLabel::F => rank == 4,
            TypeLabel::G => rank == 2,
        };
        if !ok {
            return Err(bad());
        }

        let (cartan, d) = cartan_matrix(label, rank);
        // These come from Kac's tables; not recomputed here.
        let h_vee = match label {
            TypeLabel::A => rank as i64 + 1,
            TypeLabel::B => 2 * rank as i64 - 1,
            TypeLabel::C => rank as i64 + 1,
            TypeLabel::D => 2 * rank as i64 - 2,
            TypeLabel::E => match rank {
                6 => 12,
                7 => 18,
                _ => 30,
            },
            TypeLabel::F => 9,
            TypeLabel::G => 4,
        };
        let r_vee = *d.iter().max().unwrap();

        // Symmetrizability sanity: D*C symmetric, diagonal 2, off-diagonal <= 0.
        for i in 0..rank {
            assert_eq!(cartan[i][i], 2);
            for j in 0..rank {
                if i != j {
                    assert!(cartan[i][j] <= 0);
                }
                assert_eq!(d[i] * cartan[i][j], d[j] * cartan[j][i]);
            }
        }

        let inv_cartan = invert_rational(&cartan);

        let simple_mats: Vec<Mat> = (1..=rank)
            .map(|k| {
                // s_k(omega_j) = omega_j - delta_{kj} alpha_k
                let mut m = Mat::identity(rank);
                for row in 0..rank {
                    m.a[row * rank + (k - 1)] -= cartan[row][k - 1];
                }
                m
            })
            .collect();

        let mut partial = CartanData {
            label,
            rank,
            cartan,
            d,
            r_vee,
            h_vee,
            bar: Vec::new(),
            inv_cartan,
            positive_roots: Vec::new(),
            negative_root_set: HashSet::new(),
            longest: WeylElement {
                word: Vec::new(),
                mat: Mat::identity(rank),
            },
            simple_mats,
        };

        partial.build_roots();
        partial.longest = partial.compute_longest();
        partial.bar = partial.compute_bar();
        Ok(partial)
    }

    fn build_roots(&mut self) {
        let n = self.rank;
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Weight> = VecDeque::new();
        for i in 1..=n {
            let a = self.simple_root(i);
            if seen.insert(a.coords().to_vec()) {
                queue.push_back(a);
            }
        }
        while let Some(v) = queue.pop_front() {
            for m in &self.simple_mats {
                let w = m.apply(&v);
                if seen.insert(w.coords().to_vec()) {
                    queue.push_back(w);
                }
            }
        }
        let mut pos = Vec::new();
        let mut neg = HashSet::new();
        for coords in seen {
            let w = Weight::new(coords);
            let a = self
                .alpha_coords(&w)
                .expect("roots lie in the root lattice");
            if a.iter().all(|c| *c >= Rat::from_integer(0)) {
                pos.push(w);
            } else {
                neg.insert(w.coords().to_vec());
            }
        }
        pos.sort();
        self.positive_roots = pos;
        self.negative_root_set = neg;
    }

    fn compute_longest(&self) -> WeylElement {
        // w0 is the unique element sending rho to -rho; walk rho down.
        let rho = Weight::new(vec![1; self.rank]);
        let target = rho.neg();
        let mut v = rho;
        let mut word_rev: Vec<Node> = Vec::new();
        while v != target {
            let i = (1..=self.rank)
                .find(|&i| v.coord(i) > 0)
                .expect("non-antidominant weight has a positive coordinate");
            v = self.simple_mats[i - 1].apply(&v);
            word_rev.push(i);
        }
        word_rev.reverse();
        self.reduce_word(&word_rev).expect("valid generator word")
    }

    fn compute_bar(&self) -> Vec<Node> {
        let mut bar = vec![0; self.rank];
        for i in 1..=self.rank {
            let image = self.longest.act(&self.simple_root(i)).neg();
            let j = (1..=self.rank)
                .find(|&j| self.simple_root(j) == image)
                .expect("w0 permutes simple roots up to sign");
            bar[i - 1] = j;
        }
        for i in 1..=self.rank {
            assert_eq!(bar[bar[i - 1] - 1], i, "bar must be an involution");
        }
        bar
    }

    pub fn label(&self) -> TypeLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nodes(&self) -> impl Iterator<Item = Node> {
        1..=self.rank
    }

    pub fn check_node(&self, i: Node) -> Result<(), Error> {
        if i >= 1 && i <= self.rank {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node: i,
                rank: self.rank,
            })
        }
    }

    /// Cartan matrix entry `C_{i,j}` (1-based).
    pub fn c(&self, i: Node, j: Node) -> i64 {
        self.cartan[i - 1][j - 1]
    }

    /// Symmetrizer `d_i`, so `q_i = q^{d_i}`.
    pub fn d(&self, i: Node) -> i64 {
        self.d[i - 1]
    }

    /// Lacing number (max of the `d_i`).
    pub fn r_vee(&self) -> i64 {
        self.r_vee
    }

    /// Dual Coxeter number.
    pub fn h_vee(&self) -> i64 {
        self.h_vee
    }

    /// Bar involution of the node set, `w0(alpha_i) = -alpha_{bar(i)}`.
    pub fn bar(&self, i: Node) -> Node {
        self.bar[i - 1]
    }

    /// `alpha_i` in the omega-basis (column `i` of the Cartan matrix).
    pub fn simple_root(&self, i: Node) -> Weight {
        Weight::new((0..self.rank).map(|row| self.cartan[row][i - 1]).collect())
    }

    pub fn fundamental_weight(&self, i: Node) -> Weight {
        Weight::fundamental(i, self.rank)
    }

    /// Coordinates of a weight in the alpha-basis, if they are rational
    /// (always) — returned as rationals; `None` never occurs for valid input.
    pub fn alpha_coords(&self, w: &Weight) -> Option<Vec<Rat>> {
        let n = self.rank;
        let mut out = vec![Rat::from_integer(0); n];
        for (k, row) in self.inv_cartan.iter().enumerate() {
            let mut acc = Rat::from_integer(0);
            for (j, entry) in row.iter().enumerate() {
                acc += *entry * Rat::from_integer(w.coords()[j]);
            }
            out[k] = acc;
        }
        Some(out)
    }

    /// Integer alpha-basis coordinates, or `None` if the weight is not in the
    /// root lattice.
    pub fn alpha_coords_integral(&self, w: &Weight) -> Option<Vec<i64>> {
        let rat = self.alpha_coords(w)?;
        let mut out = Vec::with_capacity(rat.len());
        for r in rat {
            if !r.is_integer() {
                return None;
            }
            out.push(r.to_integer());
        }
        Some(out)
    }

    /// The invariant symmetric bilinear form, normalized by
    /// `(alpha_i, omega_j) = d_j delta_{i,j}`.
    pub fn invariant_form(&self, lambda: &Weight, mu: &Weight) -> Rat {
        let a = self.alpha_coords(lambda).expect("rational coordinates");
        let mut acc = Rat::from_integer(0);
        for k in 0..self.rank {
            acc += a[k] * Rat::from_integer(mu.coords()[k] * self.d[k]);
        }
        acc
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement {
            word: Vec::new(),
            mat: Mat::identity(self.rank),
        }
    }

    pub fn simple_reflection(&self, i: Node) -> Result<WeylElement, Error> {
        self.check_node(i)?;
        Ok(WeylElement {
            word: vec![i],
            mat: self.simple_mats[i - 1].clone(),
        })
    }

    /// Canonicalize an arbitrary generator word into a [`WeylElement`].
    ///
    /// The stored word is the lexicographically least reduced word, computed
    /// greedily from left descents of the lattice action.
    pub fn reduce_word(&self, word: &[Node]) -> Result<WeylElement, Error> {
        for &i in word {
            self.check_node(i)?;
        }
        let mut mat = Mat::identity(self.rank);
        for &i in word {
            mat = mat.mul(&self.simple_mats[i - 1]);
        }
        Ok(self.canonicalize(mat))
    }

    fn canonicalize(&self, mat: Mat) -> WeylElement {
        let mut inv = integer_inverse(&mat);
        let mut m = mat.clone();
        let mut left: Vec<Node> = Vec::new();
        // Greedy smallest left descent: l(s_i w) < l(w) iff w^{-1}(alpha_i)
        // is a negative root. Peeling the smallest descent first yields the
        // lexicographically least reduced word.
        while !m.is_identity() {
            let i = (1..=self.rank)
                .find(|&i| {
                    let v = inv.apply(&self.simple_root(i));
                    self.negative_root_set.contains(v.coords())
                })
                .expect("a non-identity element has a left descent");
            left.push(i);
            m = self.simple_mats[i - 1].mul(&m);
            inv = inv.mul(&self.simple_mats[i - 1]);
        }
        WeylElement { word: left, mat }
    }

    /// Group multiplication, `w * v` (apply `v` first to weights... no:
    /// `(w*v)(x) = w(v(x))`).
    pub fn multiply(&self, w: &WeylElement, v: &WeylElement) -> WeylElement {
        self.canonicalize(w.mat.mul(&v.mat))
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        let mut word: Vec<Node> = w.word().to_vec();
        word.reverse();
        self.reduce_word(&word).expect("valid word")
    }

    pub fn longest_element(&self) -> &WeylElement {
        &self.longest
    }

    /// `l(w)` computed from the canonical word.
    pub fn length(&self, w: &WeylElement) -> usize {
        w.len()
    }

    /// Whether `w(alpha_i)` is a positive root.
    pub fn sends_simple_root_positive(&self, w: &WeylElement, i: Node) -> bool {
        let v = w.act(&self.simple_root(i));
        !self.negative_root_set.contains(v.coords())
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// Order of the Weyl group, from the standard closed forms.
    pub fn weyl_order(&self) -> u64 {
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).product::<u64>();
        match self.label {
            TypeLabel::A => fact(n + 1),
            TypeLabel::B | TypeLabel::C => (1u64 << n) * fact(n),
            TypeLabel::D => (1u64 << (n - 1)) * fact(n),
            TypeLabel::E => match self.rank {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            TypeLabel::F => 1_152,
            TypeLabel::G => 12,
        }
    }

    /// Full enumeration of the Weyl group, breadth-first from the identity.
    /// Intended for small-rank sweeps only; the order is deterministic
    /// (by length, then lexicographic canonical word).
    pub fn enumerate_weyl(&self) -> Vec<WeylElement> {
        let mut seen: HashMap<Vec<i64>, WeylElement> = HashMap::new();
        let id = self.identity();
        let mut queue = VecDeque::new();
        seen.insert(id.mat.a.clone(), id.clone());
        queue.push_back(id);
        while let Some(w) = queue.pop_front() {
            for i in 1..=self.rank {
                let next = self.multiply(&w, &self.simple_reflection(i).unwrap());
                if !seen.contains_key(&next.mat.a) {
                    seen.insert(next.mat.a.clone(), next.clone());
                    queue.push_back(next);
                }
            }
        }
        let mut all: Vec<WeylElement> = seen.into_values().collect();
        all.sort_by(|a, b| (a.len(), a.word()).cmp(&(b.len(), b.word())));
        all
    }
}

/// Invert a unimodular lattice action (Weyl matrices have determinant ±1,
/// so the rational inverse has integer entries).
fn integer_inverse(mat: &Mat) -> Mat {
    let n = mat.n;
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| mat.at(i, j)).collect())
        .collect();
    let inv = invert_rational(&rows);
    let mut a = vec![0i64; n * n];
    for i in 0..n {
        for j in 0..n {
            assert!(inv[i][j].is_integer(), "Weyl matrices are unimodular");
            a[i * n + j] = inv[i][j].to_integer();
        }
    }
    Mat { n, a }
}

fn invert_rational(c: &[Vec<i64>]) -> Vec<Vec<Rat>> {
    let n = c.len();
    let mut aug: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = c[i].iter().map(|&v| Rat::from_integer(v)).collect();
            for j in 0..n {
                row.push(Rat::from_integer((i == j) as i64));
            }
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| aug[r][col] != Rat::from_integer(0))
            .expect("Cartan matrix is invertible");
        aug.swap(col, pivot);
        let p = aug[col][col];
        for v in aug[col].iter_mut() {
            *v /= p;
        }
        for r in 0..n {
            if r != col {
                let f = aug[r][col];
                if f != Rat::from_integer(0) {
                    for j in 0..2 * n {
                        let sub = f * aug[col][j];
                        aug[r][j] -= sub;
                    }
                }
            }
        }
    }
    aug.into_iter().map(|row| row[n..].to_vec()).collect()
}

fn cartan_matrix(label: TypeLabel, n: usize) -> (Vec<Vec<i64>>, Vec<i64>) {
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        c[i][i] = 2;
    }
    let mut chain = |edges: &[(usize, usize)]| {
        for &(i, j) in edges {
            c[i][j] = -1;
            c[j][i] = -1;
        }
    };
    let d;
    match label {
        TypeLabel::A => {
            let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
            chain(&edges);
            d = vec![1; n];
        }
        TypeLabel::B => {
            let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
            chain(&edges);
            // short last node: C_{n,n-1} = -2
            c[n - 1][n - 2] = -2;
            let mut dd = vec![2; n];
            dd[n - 1] = 1;
            d = dd;
        }
        TypeLabel::C => {
            let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
            chain(&edges);
            // long last node: C_{n-1,n} = -2
            c[n - 2][n - 1] = -2;
            let mut dd = vec![1; n];
            dd[n - 1] = 2;
            d = dd;
        }
        TypeLabel::D => {
            let mut edges: Vec<_> = (0..n - 3).map(|i| (i, i + 1)).collect();
            edges.push((n - 3, n - 2));
            edges.push((n - 3, n - 1));
            chain(&edges);
            d = vec![1; n];
        }
        TypeLabel::E => {
            // Bourbaki numbering: chain 1-3-4-5-..., branch node 2 attached to 4.
            let mut edges = vec![(0, 2), (1, 3)];
            for i in 2..n - 1 {
                edges.push((i, i + 1));
            }
            chain(&edges);
            d = vec![1; n];
        }
        TypeLabel::F => {
            chain(&[(0, 1), (1, 2), (2, 3)]);
            c[2][1] = -2;
            d = vec![2, 2, 1, 1];
        }
        TypeLabel::G => {
            c[0][1] = -1;
            c[1][0] = -3;
            d = vec![3, 1];
        }
    }
    (c, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cd(label: TypeLabel, rank: usize) -> CartanData {
        CartanData::new(label, rank).unwrap()
    }

    #[test]
    fn a1_tables() {
        let a1 = cd(TypeLabel::A, 1);
        assert_eq!(a1.c(1, 1), 2);
        assert_eq!(a1.d(1), 1);
        assert_eq!(a1.r_vee(), 1);
        assert_eq!(a1.h_vee(), 2);
        assert_eq!(a1.bar(1), 1);
    }

    #[test]
    fn b2_symmetrizers() {
        let b2 = cd(TypeLabel::B, 2);
        assert_eq!((b2.d(1), b2.d(2)), (2, 1));
        assert_eq!(b2.c(1, 2), -1);
        assert_eq!(b2.c(2, 1), -2);
        assert_eq!(b2.h_vee(), 3);
        assert_eq!(b2.r_vee(), 2);
    }

    #[test]
    fn a2_bar_involution_from_w0() {
        let a2 = cd(TypeLabel::A, 2);
        assert_eq!(a2.bar(1), 2);
        assert_eq!(a2.bar(2), 1);
        // cross-check against exhaustive enumeration: w0 is the longest
        let all = a2.enumerate_weyl();
        assert_eq!(all.len(), 6);
        let longest = all.iter().max_by_key(|w| w.len()).unwrap();
        assert_eq!(longest, a2.longest_element());
        assert_eq!(longest.act(&a2.simple_root(1)), a2.simple_root(2).neg());
    }

    #[test]
    fn invalid_types_rejected() {
        assert!(CartanData::new(TypeLabel::A, 0).is_err());
        assert!(CartanData::new(TypeLabel::A, 9).is_err());
        assert!(CartanData::new(TypeLabel::B, 1).is_err());
        assert!(CartanData::new(TypeLabel::D, 3).is_err());
        assert!(CartanData::new(TypeLabel::F, 5).is_err());
        assert!(CartanData::new(TypeLabel::G, 3).is_err());
    }

    #[test]
    fn reflection_formula() {
        // s_1(omega_1) = omega_1 - alpha_1 = -omega_1 in A1
        let a1 = cd(TypeLabel::A, 1);
        let s1 = a1.simple_reflection(1).unwrap();
        assert_eq!(s1.act(&a1.fundamental_weight(1)), Weight::new(vec![-1]));

        // s_1(omega_2) = omega_2 in A2
        let a2 = cd(TypeLabel::A, 2);
        let s1 = a2.simple_reflection(1).unwrap();
        assert_eq!(s1.act(&a2.fundamental_weight(2)), a2.fundamental_weight(2));
    }

    #[test]
    fn longest_in_a2_sends_w1_to_minus_w2() {
        let a2 = cd(TypeLabel::A, 2);
        let w0 = a2.longest_element();
        assert_eq!(w0.len(), 3);
        assert_eq!(
            w0.act(&a2.fundamental_weight(1)),
            a2.fundamental_weight(2).neg()
        );
    }

    #[test]
    fn word_canonicalization() {
        let a2 = cd(TypeLabel::A, 2);
        assert!(a2.reduce_word(&[1, 1]).unwrap().is_identity());
        let braid_a = a2.reduce_word(&[1, 2, 1]).unwrap();
        let braid_b = a2.reduce_word(&[2, 1, 2]).unwrap();
        assert_eq!(braid_a, braid_b);
        assert_eq!(braid_a.word(), &[1, 2, 1]);

        let b2 = cd(TypeLabel::B, 2);
        assert_eq!(b2.reduce_word(&[1, 2, 1, 2]).unwrap().len(), 4);
        assert_eq!(b2.enumerate_weyl().len(), 8);
    }

    #[test]
    fn invariant_form_values() {
        let b2 = cd(TypeLabel::B, 2);
        // (alpha_1, omega_1) = d_1 = 2
        assert_eq!(
            b2.invariant_form(&b2.simple_root(1), &b2.fundamental_weight(1)),
            Rat::from_integer(2)
        );
        assert_eq!(
            b2.invariant_form(&b2.simple_root(1), &b2.fundamental_weight(2)),
            Rat::from_integer(0)
        );
        // W-invariance spot check in G2
        let g2 = cd(TypeLabel::G, 2);
        let lam = Weight::new(vec![2, -3]);
        let mu = Weight::new(vec![-1, 4]);
        let s1 = g2.simple_reflection(1).unwrap();
        assert_eq!(
            g2.invariant_form(&s1.act(&lam), &s1.act(&mu)),
            g2.invariant_form(&lam, &mu)
        );
        assert_eq!(g2.invariant_form(&lam, &mu), g2.invariant_form(&mu, &lam));
    }

    #[test]
    fn coxeter_numbers_match_pair_orders() {
        for (label, rank) in [(TypeLabel::A, 3), (TypeLabel::B, 3), (TypeLabel::G, 2)] {
            let cdx = cd(label, rank);
            for i in 1..=rank {
                for j in 1..=rank {
                    if i == j {
                        continue;
                    }
                    let prod = cdx.multiply(
                        &cdx.simple_reflection(i).unwrap(),
                        &cdx.simple_reflection(j).unwrap(),
                    );
                    let mut acc = cdx.identity();
                    let mut order = 0;
                    loop {
                        acc = cdx.multiply(&acc, &prod);
                        order += 1;
                        if acc.is_identity() {
                            break;
                        }
                    }
                    let expected = match cdx.c(i, j) * cdx.c(j, i) {
                        0 => 2,
                        1 => 3,
                        2 => 4,
                        3 => 6,
                        _ => unreachable!(),
                    };
                    assert_eq!(order, expected);
                }
            }
        }
    }

    #[test]
    fn all_supported_types_construct() {
        let expected_positive_roots = |label: TypeLabel, n: usize| match label {
            TypeLabel::A => n * (n + 1) / 2,
            TypeLabel::B | TypeLabel::C => n * n,
            TypeLabel::D => n * (n - 1),
            TypeLabel::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            TypeLabel::F => 24,
            TypeLabel::G => 6,
        };
        let mut cases = vec![(TypeLabel::F, 4), (TypeLabel::G, 2)];
        for n in 1..=8 {
            cases.push((TypeLabel::A, n));
        }
        for n in 2..=8 {
            cases.push((TypeLabel::B, n));
            cases.push((TypeLabel::C, n));
        }
        for n in 4..=8 {
            cases.push((TypeLabel::D, n));
        }
        for n in 6..=8 {
            cases.push((TypeLabel::E, n));
        }
        for (label, n) in cases {
            let cdx = cd(label, n);
            assert_eq!(
                cdx.positive_roots().len(),
                expected_positive_roots(label, n)
            );
            assert_eq!(
                cdx.longest_element().len(),
                expected_positive_roots(label, n)
            );
            // gcd of the symmetrizers is 1
            let g = (1..=n).map(|i| cdx.d(i)).fold(0, gcd);
            assert_eq!(g, 1, "{label}{n}");
            // bar is an involution compatible with w0
            for i in 1..=n {
                assert_eq!(cdx.bar(cdx.bar(i)), i);
                assert_eq!(
                    cdx.longest_element().act(&cdx.simple_root(i)),
                    cdx.simple_root(cdx.bar(i)).neg()
                );
            }
        }
    }

    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn bar_involution_tables() {
        // nontrivial diagram automorphisms
        let a3 = cd(TypeLabel::A, 3);
        assert_eq!((a3.bar(1), a3.bar(2), a3.bar(3)), (3, 2, 1));
        let e6 = cd(TypeLabel::E, 6);
        assert_eq!(e6.bar(1), 6);
        assert_eq!(e6.bar(3), 5);
        assert_eq!(e6.bar(2), 2);
        assert_eq!(e6.bar(4), 4);
        let d5 = cd(TypeLabel::D, 5);
        assert_eq!((d5.bar(4), d5.bar(5)), (5, 4));
        let d4 = cd(TypeLabel::D, 4);
        assert!((1..=4).all(|i| d4.bar(i) == i));
    }

    #[test]
    fn weyl_group_orders() {
        assert_eq!(cd(TypeLabel::A, 3).enumerate_weyl().len(), 24);
        assert_eq!(cd(TypeLabel::G, 2).enumerate_weyl().len(), 12);
        assert_eq!(cd(TypeLabel::D, 4).enumerate_weyl().len(), 192);
    }
}
