//! Finite models of the full knot complex: generators with `(M, A)`, arrows
//! labeled by their basepoint multiplicities `(nw, nz)`, and a flip
//! involution exchanging the roles of the two basepoints.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{ModelError, ModelValidation};
use crate::invariants::staircase;
use crate::laurent::LaurentPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModelArrow {
    pub from: usize,
    pub to: usize,
    pub nw: u32,
    pub nz: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelComplex {
    pub ids: Vec<String>,
    pub maslov: Vec<i64>,
    pub alexander: Vec<i64>,
    pub arrows: Vec<ModelArrow>,
    pub flip: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct GeneratorDoc {
    id: Value,
    #[serde(rename = "M")]
    m: i64,
    #[serde(rename = "A")]
    a: i64,
}

#[derive(Serialize, Deserialize)]
struct ArrowDoc {
    from: Value,
    to: Value,
    nw: u32,
    nz: u32,
}

#[derive(Serialize, Deserialize)]
struct ModelDoc {
    generators: Vec<GeneratorDoc>,
    #[serde(default)]
    arrows: Vec<ArrowDoc>,
    #[serde(default)]
    flip: Vec<[Value; 2]>,
}

fn id_string(v: &Value) -> Result<String, ModelError> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(ModelError::Parse(format!("generator ids must be strings or integers, got {other}"))),
    }
}

/// Parses and validates a model document, reporting every violated invariant.
pub fn load_model(document: &str) -> Result<ModelComplex, ModelValidation> {
    let doc: ModelDoc = serde_json::from_str(document).map_err(|e| ModelValidation(vec![ModelError::Parse(e.to_string())]))?;
    let mut errors = Vec::new();
    let mut ids = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let (mut maslov, mut alexander) = (Vec::new(), Vec::new());
    for g in &doc.generators {
        match id_string(&g.id) {
            Ok(id) => {
                if index.insert(id.clone(), ids.len()).is_some() {
                    errors.push(ModelError::DuplicateId(id.clone()));
                }
                ids.push(id);
                maslov.push(g.m);
                alexander.push(g.a);
            }
            Err(e) => errors.push(e),
        }
    }
    let lookup = |v: &Value, errors: &mut Vec<ModelError>| -> Option<usize> {
        match id_string(v) {
            Ok(id) => match index.get(&id) {
                Some(&i) => Some(i),
                None => {
                    errors.push(ModelError::UnknownId(id));
                    None
                }
            },
            Err(e) => {
                errors.push(e);
                None
            }
        }
    };
    let mut arrows = Vec::new();
    for a in &doc.arrows {
        let from = lookup(&a.from, &mut errors);
        let to = lookup(&a.to, &mut errors);
        if let (Some(from), Some(to)) = (from, to) {
            arrows.push(ModelArrow { from, to, nw: a.nw, nz: a.nz });
        }
    }
    let mut flip = vec![usize::MAX; ids.len()];
    for [a, b] in &doc.flip {
        let (Some(x), Some(y)) = (lookup(a, &mut errors), lookup(b, &mut errors)) else { continue };
        for (p, q) in [(x, y), (y, x)] {
            if flip[p] != usize::MAX && flip[p] != q {
                errors.push(ModelError::FlipNotInvolution(format!("{} has two partners", ids[p])));
            }
            flip[p] = q;
        }
    }
    if errors.is_empty() {
        if let Some(p) = flip.iter().position(|&f| f == usize::MAX) {
            errors.push(ModelError::FlipNotInvolution(format!("{} has no partner", ids[p])));
        }
    }
    if !errors.is_empty() {
        return Err(ModelValidation(errors));
    }
    let m = ModelComplex { ids, maslov, alexander, arrows, flip };
    m.validate()?;
    Ok(m)
}

impl ModelComplex {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn max_abs_alexander(&self) -> i64 {
        self.alexander.iter().map(|a| a.abs()).max().unwrap_or(0)
    }

    pub fn maslov_spread(&self) -> i64 {
        let max = self.maslov.iter().max().copied().unwrap_or(0);
        let min = self.maslov.iter().min().copied().unwrap_or(0);
        max - min
    }

    pub fn arrows_from(&self) -> Vec<Vec<ModelArrow>> {
        let mut out = vec![Vec::new(); self.len()];
        for &a in &self.arrows {
            out[a.from].push(a);
        }
        out
    }

    /// Checks gradings, `d^2 = 0` and flip compatibility; collects every failure.
    pub fn validate(&self) -> Result<(), ModelValidation> {
        let mut errors = Vec::new();
        for a in &self.arrows {
            let (from, to) = (self.ids[a.from].clone(), self.ids[a.to].clone());
            let got = self.maslov[a.from] - self.maslov[a.to];
            let expected = 1 - 2 * a.nw as i64;
            if got != expected {
                errors.push(ModelError::MaslovViolation { from: from.clone(), to: to.clone(), got, expected });
            }
            let got = self.alexander[a.from] - self.alexander[a.to];
            let expected = a.nz as i64 - a.nw as i64;
            if got != expected {
                errors.push(ModelError::AlexanderViolation { from, to, got, expected });
            }
        }
        let defect = self.square_defect();
        if defect != 0 {
            errors.push(ModelError::NotAComplex(defect));
        }
        for x in 0..self.len() {
            let f = self.flip[x];
            if f >= self.len() || self.flip[f] != x {
                errors.push(ModelError::FlipNotInvolution(self.ids[x].clone()));
                continue;
            }
            if self.maslov[f] != self.maslov[x] - 2 * self.alexander[x] || self.alexander[f] != -self.alexander[x] {
                errors.push(ModelError::FlipGrading(self.ids[x].clone()));
            }
        }
        if errors.iter().all(|e| !matches!(e, ModelError::FlipNotInvolution(_))) {
            let count = |arrows: &mut dyn Iterator<Item = (usize, usize, u32, u32)>| {
                let mut c: BTreeMap<(usize, usize, u32, u32), usize> = BTreeMap::new();
                for k in arrows {
                    *c.entry(k).or_default() += 1;
                }
                c.into_iter().filter(|(_, v)| v % 2 == 1).map(|(k, _)| k).collect::<Vec<_>>()
            };
            let direct = count(&mut self.arrows.iter().map(|a| (a.from, a.to, a.nw, a.nz)));
            let flipped = count(&mut self.arrows.iter().map(|a| (self.flip[a.from], self.flip[a.to], a.nz, a.nw)));
            if direct != flipped {
                errors.push(ModelError::FlipArrows(format!("{} arrows do not match their flipped images", self.arrows.len())));
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(ModelValidation(errors))
        }
    }

    /// Nonzero terms of `d o d`, labels added, reduced mod 2.
    pub fn square_defect(&self) -> usize {
        let from = self.arrows_from();
        let mut defect = 0;
        for x in 0..self.len() {
            let mut acc: BTreeMap<(usize, u32, u32), bool> = BTreeMap::new();
            for a in &from[x] {
                for b in &from[a.to] {
                    let slot = acc.entry((b.to, a.nw + b.nw, a.nz + b.nz)).or_insert(false);
                    *slot = !*slot;
                }
            }
            defect += acc.values().filter(|&&v| v).count();
        }
        defect
    }

    /// The model of the mirror knot: gradings negated, arrows reversed.
    pub fn dual(&self) -> ModelComplex {
        ModelComplex {
            ids: self.ids.clone(),
            maslov: self.maslov.iter().map(|m| -m).collect(),
            alexander: self.alexander.iter().map(|a| -a).collect(),
            arrows: self.arrows.iter().map(|a| ModelArrow { from: a.to, to: a.from, nw: a.nw, nz: a.nz }).collect(),
            flip: self.flip.clone(),
        }
    }

    /// Hat knot Floer ranks `(M, A)` of the model: arrows with `nw = nz = 0`
    /// only.
    pub fn hat_ranks(&self) -> Result<crate::homology::BigradedRanks, ModelError> {
        let gradings = (0..self.len()).map(|x| (self.maslov[x], self.alexander[x])).collect();
        let mut boundary = vec![Vec::new(); self.len()];
        for a in self.arrows.iter().filter(|a| a.nw == 0 && a.nz == 0) {
            boundary[a.from].push(a.to as u32);
        }
        let boundary = boundary.into_iter().map(crate::homology::f2::reduce_mod2).collect();
        Ok(crate::homology::f2_homology(&crate::complex::BigradedComplex { gradings, boundary })?)
    }

    pub fn to_json(&self) -> String {
        let doc = ModelDoc {
            generators: (0..self.len())
                .map(|x| GeneratorDoc { id: Value::String(self.ids[x].clone()), m: self.maslov[x], a: self.alexander[x] })
                .collect(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowDoc { from: Value::String(self.ids[a.from].clone()), to: Value::String(self.ids[a.to].clone()), nw: a.nw, nz: a.nz })
                .collect(),
            flip: (0..self.len())
                .filter(|&x| x <= self.flip[x])
                .map(|x| [Value::String(self.ids[x].clone()), Value::String(self.ids[self.flip[x]].clone())])
                .collect(),
        };
        serde_json::to_string(&doc).expect("serializable")
    }
}

pub fn unknot_model() -> ModelComplex {
    ModelComplex { ids: vec!["x".into()], maslov: vec![0], alexander: vec![0], arrows: vec![], flip: vec![0] }
}

/// a(2, 1), b(1, 0), c(0, -1) with `a -> b` through z and `c -> b` through w.
pub fn trefoil_left_model() -> ModelComplex {
    ModelComplex {
        ids: vec!["a".into(), "b".into(), "c".into()],
        maslov: vec![2, 1, 0],
        alexander: vec![1, 0, -1],
        arrows: vec![ModelArrow { from: 0, to: 1, nw: 0, nz: 1 }, ModelArrow { from: 2, to: 1, nw: 1, nz: 0 }],
        flip: vec![2, 1, 0],
    }
}

pub fn trefoil_right_model() -> ModelComplex {
    trefoil_left_model().dual()
}

/// Staircase complex of an L-space knot: generator `x_j` at
/// `(M, A) = (delta_j, n_j)`; for `k - j` odd, `x_j` maps to `x_(j+1)` with
/// `nw = n_(j+1) - n_j` and to `x_(j-1)` with `nz = n_j - n_(j-1)`.
pub fn staircase_model(delta: &LaurentPoly) -> Result<ModelComplex, ModelError> {
    let s = staircase(delta)?;
    let len = s.n.len();
    let mut arrows = Vec::new();
    for idx in 0..len {
        if (len - 1 - idx) % 2 == 1 {
            arrows.push(ModelArrow { from: idx, to: idx + 1, nw: (s.n[idx + 1] - s.n[idx]) as u32, nz: 0 });
            arrows.push(ModelArrow { from: idx, to: idx - 1, nw: 0, nz: (s.n[idx] - s.n[idx - 1]) as u32 });
        }
    }
    let k = (len / 2) as i64;
    let m = ModelComplex {
        ids: (0..len as i64).map(|i| format!("x{}", i - k)).collect(),
        maslov: s.delta.clone(),
        alexander: s.n.clone(),
        arrows,
        flip: (0..len).rev().collect(),
    };
    m.validate().map_err(|e| ModelError::NotStaircase(e.to_string()))?;
    Ok(m)
}

/// Bundled models by name: `unknot`, `trefoil-left`, `trefoil-right`, `t34`.
pub fn bundled_model(name: &str) -> Result<ModelComplex, ModelError> {
    match name {
        "unknot" => Ok(unknot_model()),
        "trefoil-left" => Ok(trefoil_left_model()),
        "trefoil-right" => Ok(trefoil_right_model()),
        "t34" => staircase_model(&LaurentPoly::from_coeffs(-3, &[1, -1, 0, 1, 0, -1, 1])),
        other => Err(ModelError::UnknownModel(other.to_string())),
    }
}
