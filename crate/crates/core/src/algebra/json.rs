use serde::{Deserialize, Serialize};

use super::{make_algebra, Algebra, AlgebraError};
use crate::linalg::Fp;

/// Wire format for algebras. Triples in `mult` are `[i, j, k, c]`, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub p: u32,
    pub labels: Vec<String>,
    pub unit: Vec<i64>,
    pub mult: Vec<[i64; 4]>,
    pub radical_gens: Option<Vec<Vec<i64>>>,
    pub counit: Option<Vec<i64>>,
}

impl From<&Algebra> for AlgebraJson {
    fn from(a: &Algebra) -> Self {
        let widen = |v: &[u32]| v.iter().map(|&x| x as i64).collect::<Vec<_>>();
        AlgebraJson {
            p: a.p(),
            labels: a.labels().to_vec(),
            unit: widen(a.unit()),
            mult: a
                .triples()
                .into_iter()
                .map(|(i, j, k, c)| [i as i64, j as i64, k as i64, c as i64])
                .collect(),
            radical_gens: a
                .radical_gens()
                .map(|g| g.iter().map(|v| widen(v)).collect()),
            counit: a.counit().map(widen),
        }
    }
}

impl AlgebraJson {
    /// Validates and builds the algebra.
    pub fn to_algebra(&self) -> Result<Algebra, AlgebraError> {
        let field = Fp::new(self.p)?;
        let mut mult = Vec::with_capacity(self.mult.len());
        for t in &self.mult {
            if t[..3].iter().any(|&x| x < 0) {
                return Err(AlgebraError::Malformed(format!(
                    "negative index in triple {t:?}"
                )));
            }
            mult.push((t[0] as usize, t[1] as usize, t[2] as usize, t[3]));
        }
        let residues = |v: &[i64]| v.iter().map(|&x| field.reduce(x)).collect::<Vec<u32>>();
        let mut a = make_algebra(field, self.labels.clone(), &mult, residues(&self.unit))?
            .with_name("json");
        if let Some(g) = &self.radical_gens {
            a = a.with_radical_gens(g.iter().map(|v| residues(v)).collect())?;
        }
        if let Some(c) = &self.counit {
            a = a.with_counit(residues(c))?;
        }
        Ok(a)
    }

    pub fn parse(text: &str) -> Result<Algebra, AlgebraError> {
        let j: AlgebraJson =
            serde_json::from_str(text).map_err(|e| AlgebraError::Malformed(e.to_string()))?;
        j.to_algebra()
    }

    pub fn dump(a: &Algebra) -> String {
        serde_json::to_string(&AlgebraJson::from(a)).expect("algebra JSON serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{smash_product, truncated_polynomial};

    #[test]
    fn round_trip_is_byte_identical() {
        let f = Fp::new(3).unwrap();
        let (a, _) = smash_product(f, 1, 1).unwrap();
        let text = AlgebraJson::dump(&a);
        let b = AlgebraJson::parse(&text).unwrap();
        assert_eq!(AlgebraJson::dump(&b), text);
        let t = truncated_polynomial(f, &[1, 1]).unwrap();
        let text = AlgebraJson::dump(&t);
        assert_eq!(AlgebraJson::dump(&AlgebraJson::parse(&text).unwrap()), text);
    }

    #[test]
    fn unsorted_input_is_canonicalized() {
        let text = r#"{"p":3,"labels":["e1","e2"],"unit":[1,1],"mult":[[1,1,1,1],[0,0,0,4]],"radical_gens":[],"counit":null}"#;
        let a = AlgebraJson::parse(text).unwrap();
        assert_eq!(
            AlgebraJson::dump(&a),
            r#"{"p":3,"labels":["e1","e2"],"unit":[1,1],"mult":[[0,0,0,1],[1,1,1,1]],"radical_gens":[],"counit":null}"#
        );
    }

    #[test]
    fn bad_inputs_rejected() {
        assert!(AlgebraJson::parse("{").is_err());
        let p2 = r#"{"p":2,"labels":["e"],"unit":[1],"mult":[[0,0,0,1]],"radical_gens":null,"counit":null}"#;
        assert!(AlgebraJson::parse(p2).is_err());
        let nonassoc = r#"{"p":3,"labels":["e"],"unit":[1],"mult":[[0,0,0,2]],"radical_gens":null,"counit":null}"#;
        assert!(AlgebraJson::parse(nonassoc).is_err());
    }
}
