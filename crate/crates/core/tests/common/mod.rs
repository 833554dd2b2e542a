#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;

use statesurf::{BraidWord, CorpusEntry, LinkDiagram};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn load(file: &str) -> Vec<CorpusEntry> {
    let text = std::fs::read_to_string(corpus_dir().join(file)).expect("corpus file");
    statesurf::corpus::parse_corpus(&text).expect("corpus json")
}

pub fn full_corpus() -> Vec<(CorpusEntry, LinkDiagram)> {
    ["alternating.json", "mixed.json"]
        .iter()
        .flat_map(|f| load(f))
        .map(|e| {
            let d = e.diagram().expect("corpus entry parses");
            (e, d)
        })
        .collect()
}

pub fn braid(s: &str) -> LinkDiagram {
    s.parse::<BraidWord>().unwrap().closure().unwrap()
}

/// Laurent polynomial in A with small integer coefficients.
pub type Poly = BTreeMap<i64, i128>;

fn add_shifted(acc: &mut Poly, p: &Poly, shift: i64) {
    for (&e, &c) in p {
        *acc.entry(e + shift).or_insert(0) += c;
    }
    acc.retain(|_, c| *c != 0);
}

fn loop_power(n: usize) -> Poly {
    // (-A^2 - A^-2)^n
    let mut p: Poly = BTreeMap::from([(0, 1)]);
    for _ in 0..n {
        let mut q = Poly::new();
        for (&e, &c) in &p {
            *q.entry(e + 2).or_insert(0) -= c;
            *q.entry(e - 2).or_insert(0) -= c;
        }
        q.retain(|_, c| *c != 0);
        p = q;
    }
    p
}

/// Reads `X[a,b,c,d]` tuples without going through the library parser.
pub fn raw_pd(s: &str) -> Vec<[u64; 4]> {
    s.split('X')
        .filter(|t| t.starts_with('['))
        .map(|t| {
            let inner = &t[t.find('[').unwrap() + 1..t.find(']').unwrap()];
            let v: Vec<u64> = inner.split(',').map(|x| x.trim().parse().unwrap()).collect();
            [v[0], v[1], v[2], v[3]]
        })
        .collect()
}

/// Skein recursion on PD tuples: `<X[a,b,c,d]> = A <ab|cd> + A^-1 <da|bc>`,
/// where the smoothed strands are recorded as label identifications and
/// loops are counted once no crossing remains. Normalized so the unknot is 1.
pub struct SkeinOracle {
    memo: HashMap<(usize, Vec<u64>), Poly>,
}

impl SkeinOracle {
    pub fn new() -> Self {
        Self { memo: HashMap::new() }
    }

    pub fn bracket(&mut self, pd: &[[u64; 4]]) -> Poly {
        if pd.is_empty() {
            return BTreeMap::from([(0, 1)]);
        }
        let mut labels: Vec<u64> = pd.iter().flatten().copied().collect();
        labels.sort_unstable();
        labels.dedup();
        // Each label starts as its own class; smoothing merges classes.
        self.memo.clear();
        let class = labels.clone();
        self.expand(pd, 0, &labels, class)
    }

    fn expand(&mut self, pd: &[[u64; 4]], k: usize, labels: &[u64], class: Vec<u64>) -> Poly {
        if k == pd.len() {
            // One loop per class; the unknot normalization drops one factor.
            let mut roots: Vec<u64> = class.clone();
            roots.sort_unstable();
            roots.dedup();
            return loop_power(roots.len() - 1);
        }
        let key = (k, class.clone());
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let [a, b, c, d] = pd[k];
        let mut total = Poly::new();
        for (shift, pairs) in [(1, [(a, b), (c, d)]), (-1, [(d, a), (b, c)])] {
            let mut next = class.clone();
            for (x, y) in pairs {
                let ix = labels.binary_search(&x).unwrap();
                let iy = labels.binary_search(&y).unwrap();
                let (cx, cy) = (next[ix], next[iy]);
                if cx != cy {
                    let (lo, hi) = (cx.min(cy), cx.max(cy));
                    for v in next.iter_mut() {
                        if *v == hi {
                            *v = lo;
                        }
                    }
                }
            }
            let sub = self.expand(pd, k + 1, labels, next);
            add_shifted(&mut total, &sub, shift);
        }
        self.memo.insert(key, total.clone());
        total
    }
}

/// Converts a library polynomial into the oracle's representation.
pub fn to_poly(p: &statesurf::LaurentPolynomial) -> Poly {
    p.terms()
        .map(|(e, c)| (e, i128::try_from(c.clone()).unwrap()))
        .collect()
}
