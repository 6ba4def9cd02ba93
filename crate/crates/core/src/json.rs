//! JSON encodings of the library's values.
//!
//! Rationals are strings "p/q" (integers may also be given bare or as JSON
//! numbers on input). An element of E = Q[y]/(q) is a rational string when
//! E = Q and otherwise {"mod": [...], "val": [...]} with little-endian
//! coefficient lists. Inside a module the modulus is given once under "E" and
//! scalars may be written {"val": [...]}; an entry of E^f is either one
//! E-scalar (the diagonal element) or an array of f E-scalars.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::exactfield::{AlgebraElement, Etale, EtaleParent, Ext, Matrix, QuotientAlgebra, Rational, Ring};
use crate::pst::{Character, GaloisShape, PhiNGalModule, Verdict};
use crate::sen::{Block, CharacterWeights, ClassData, Flavor, WeightSystem, Witness};
use crate::tableaux::{Partition, Tableau};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {path}: {msg}")]
pub struct ParseError {
    pub path: String,
    pub msg: String,
}

fn err<T>(path: &str, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { path: path.to_string(), msg: msg.into() })
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value, ParseError> {
    v.get(key).ok_or_else(|| ParseError { path: path.into(), msg: format!("missing field \"{key}\"") })
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, ParseError> {
    v.as_array().ok_or_else(|| ParseError { path: path.into(), msg: "expected an array".into() })
}

fn usize_of(v: &Value, path: &str) -> Result<usize, ParseError> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| ParseError { path: path.into(), msg: "expected a natural number".into() })
}

fn usize_list(v: &Value, path: &str) -> Result<Vec<usize>, ParseError> {
    array(v, path)?.iter().enumerate().map(|(i, x)| usize_of(x, &format!("{path}[{i}]"))).collect()
}

pub fn rational_from_json(v: &Value, path: &str) -> Result<Rational, ParseError> {
    match v {
        Value::String(s) => s.trim().parse().or_else(|e| err(path, format!("bad rational \"{s}\": {e}"))),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap())),
        _ => err(path, "expected a rational string"),
    }
}

pub fn rational_to_json(q: &Rational) -> Value {
    Value::String(q.to_string())
}

fn rational_list(v: &Value, path: &str) -> Result<Vec<Rational>, ParseError> {
    array(v, path)?.iter().enumerate().map(|(i, x)| rational_from_json(x, &format!("{path}[{i}]"))).collect()
}

fn rationals_to_json(qs: &[Rational]) -> Value {
    Value::Array(qs.iter().map(rational_to_json).collect())
}

pub fn algebra_from_json(v: &Value, path: &str) -> Result<Arc<QuotientAlgebra>, ParseError> {
    QuotientAlgebra::new(rational_list(v, path)?).or_else(|e| err(path, e.to_string()))
}

/// An element of E; `ctx` is the algebra implied by the surrounding object,
/// used when the value omits "mod".
pub fn element_from_json(
    v: &Value,
    ctx: Option<&Arc<QuotientAlgebra>>,
    path: &str,
) -> Result<AlgebraElement, ParseError> {
    let alg = match v.get("mod") {
        Some(m) => {
            let a = algebra_from_json(m, &format!("{path}.mod"))?;
            if let Some(c) = ctx {
                if **c != *a && !a.is_rationals() {
                    return err(path, "modulus differs from the enclosing algebra");
                }
            }
            a
        }
        None => ctx.cloned().unwrap_or_else(QuotientAlgebra::rationals),
    };
    match v {
        Value::Object(_) => {
            let coeffs = rational_list(field(v, "val", path)?, &format!("{path}.val"))?;
            Ok(AlgebraElement::new(&alg, coeffs))
        }
        _ => Ok(AlgebraElement::constant(&alg, rational_from_json(v, path)?)),
    }
}

pub fn element_to_json(a: &AlgebraElement) -> Value {
    match a.as_rational() {
        Some(q) if a.algebra().is_rationals() => rational_to_json(q),
        _ => json!({"mod": rationals_to_json(a.algebra().modulus()), "val": rationals_to_json(a.coeffs())}),
    }
}

/// Element of E inside an object that records the modulus once.
fn scalar_in_context(a: &AlgebraElement) -> Value {
    match a.as_rational() {
        Some(q) => rational_to_json(q),
        None => json!({"val": rationals_to_json(a.coeffs())}),
    }
}

pub trait JsonScalar: Ring {
    fn to_json(&self) -> Value;
}

impl JsonScalar for Rational {
    fn to_json(&self) -> Value {
        rational_to_json(self)
    }
}

impl JsonScalar for AlgebraElement {
    fn to_json(&self) -> Value {
        element_to_json(self)
    }
}

impl<S: JsonScalar> JsonScalar for Ext<S> {
    fn to_json(&self) -> Value {
        json!({"ext": self.coeffs().iter().map(JsonScalar::to_json).collect::<Vec<_>>()})
    }
}

impl<S: JsonScalar> JsonScalar for Etale<S> {
    fn to_json(&self) -> Value {
        if self.is_diagonal() {
            self.component(0).to_json()
        } else {
            Value::Array(self.components().iter().map(JsonScalar::to_json).collect())
        }
    }
}

pub fn matrix_to_json<R: JsonScalar>(m: &Matrix<R>) -> Value {
    let data: Vec<Value> =
        (0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(JsonScalar::to_json).collect())).collect();
    json!({"rows": m.rows(), "cols": m.cols(), "data": data})
}

/// Reads {"rows", "cols", "data"} (or a bare array of rows) with `entry`
/// parsing each cell.
pub fn matrix_from_json<R: Ring>(
    v: &Value,
    parent: &R::Parent,
    path: &str,
    entry: impl Fn(&Value, &str) -> Result<R, ParseError>,
) -> Result<Matrix<R>, ParseError> {
    let data = if v.is_array() { v } else { field(v, "data", path)? };
    let rows = array(data, &format!("{path}.data"))?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, r) in rows.iter().enumerate() {
        let rp = format!("{path}.data[{i}]");
        out.push(
            array(r, &rp)?
                .iter()
                .enumerate()
                .map(|(j, x)| entry(x, &format!("{rp}[{j}]")))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    let m = if out.is_empty() {
        Matrix::zeros(parent, 0, 0)
    } else {
        Matrix::from_rows(parent, out).or_else(|e| err(path, e.to_string()))?
    };
    if let Value::Object(_) = v {
        if let (Some(r), Some(c)) = (v.get("rows"), v.get("cols")) {
            if usize_of(r, path)? != m.rows() || usize_of(c, path)? != m.cols() {
                return err(path, "declared size disagrees with data");
            }
        }
    }
    Ok(m)
}

fn rows_of<T>(
    v: &Value,
    path: &str,
    entry: impl Fn(&Value, &str) -> Result<T, ParseError>,
) -> Result<Vec<Vec<T>>, ParseError> {
    let data = if v.is_array() { v } else { field(v, "data", path)? };
    let rows = array(data, &format!("{path}.data"))?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, r) in rows.iter().enumerate() {
        let rp = format!("{path}.data[{i}]");
        out.push(
            array(r, &rp)?
                .iter()
                .enumerate()
                .map(|(j, x)| entry(x, &format!("{rp}[{j}]")))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    if let Value::Object(_) = v {
        let r = v.get("rows").map(|x| usize_of(x, path)).transpose()?;
        let c = v.get("cols").map(|x| usize_of(x, path)).transpose()?;
        if r.is_some_and(|r| r != out.len()) || c.is_some_and(|c| out.iter().any(|row| row.len() != c)) {
            return err(path, "declared size disagrees with data");
        }
    }
    if out.windows(2).any(|w| w[0].len() != w[1].len()) {
        return err(path, "ragged rows");
    }
    Ok(out)
}

pub fn rational_matrix_from_json(v: &Value, path: &str) -> Result<Matrix<Rational>, ParseError> {
    let rows = rows_of(v, path, rational_from_json)?;
    if rows.is_empty() {
        return err(path, "empty matrix");
    }
    Matrix::from_rows(&(), rows).or_else(|e| err(path, e.to_string()))
}

fn lift_to(e: &AlgebraElement, target: &Arc<QuotientAlgebra>, path: &str) -> Result<AlgebraElement, ParseError> {
    if e.algebra() == target {
        Ok(e.clone())
    } else if let Some(q) = e.as_rational().filter(|_| e.algebra().is_rationals()) {
        Ok(AlgebraElement::constant(target, q.clone()))
    } else {
        err(path, "entries lie in different algebras")
    }
}

/// A matrix over E. Entries may carry their own modulus; all non-rational
/// entries must agree.
pub fn element_matrix_from_json(
    v: &Value,
    alg: Option<&Arc<QuotientAlgebra>>,
    path: &str,
) -> Result<Matrix<AlgebraElement>, ParseError> {
    let rows = rows_of(v, path, |x, p| element_from_json(x, alg, p))?;
    if rows.is_empty() {
        return err(path, "empty matrix");
    }
    let target = rows
        .iter()
        .flatten()
        .map(|e| e.algebra().clone())
        .find(|a| !a.is_rationals())
        .or_else(|| alg.cloned())
        .unwrap_or_else(QuotientAlgebra::rationals);
    let lifted = rows
        .iter()
        .map(|r| r.iter().map(|e| lift_to(e, &target, path)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(&target, lifted).or_else(|e| err(path, e.to_string()))
}

fn etale_entry(
    v: &Value,
    alg: &Arc<QuotientAlgebra>,
    f: usize,
    path: &str,
) -> Result<Etale<AlgebraElement>, ParseError> {
    match v {
        Value::Array(items) => {
            if items.len() != f {
                return err(path, format!("expected {f} components"));
            }
            let comps = items
                .iter()
                .enumerate()
                .map(|(i, x)| {
                    element_from_json(x, Some(alg), &format!("{path}[{i}]")).and_then(|e| lift_to(&e, alg, path))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Etale::from_components(comps))
        }
        _ => Ok(Etale::diagonal(&lift_to(&element_from_json(v, Some(alg), path)?, alg, path)?, f)),
    }
}

fn etale_matrix_from_json(
    v: &Value,
    alg: &Arc<QuotientAlgebra>,
    f: usize,
    path: &str,
) -> Result<Matrix<Etale<AlgebraElement>>, ParseError> {
    let rows = rows_of(v, path, |x, p| etale_entry(x, alg, f, p))?;
    if rows.is_empty() {
        return err(path, "empty matrix");
    }
    Matrix::from_rows(&EtaleParent { base: alg.clone(), arity: f }, rows).or_else(|e| err(path, e.to_string()))
}

fn module_scalar(e: &Etale<AlgebraElement>) -> Value {
    if e.is_diagonal() {
        scalar_in_context(e.component(0))
    } else {
        Value::Array(e.components().iter().map(scalar_in_context).collect())
    }
}

fn module_matrix(m: &Matrix<Etale<AlgebraElement>>) -> Value {
    let data: Vec<Value> = (0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(module_scalar).collect())).collect();
    json!({"rows": m.rows(), "cols": m.cols(), "data": data})
}

pub fn partition_from_json(v: &Value, path: &str) -> Result<Partition, ParseError> {
    let parts = match v {
        Value::String(s) => return s.parse().or_else(|e: crate::tableaux::TableauError| err(path, e.to_string())),
        _ => usize_list(v, path)?,
    };
    Partition::new(parts).or_else(|e| err(path, e.to_string()))
}

pub fn partition_to_json(u: &Partition) -> Value {
    json!(u.parts())
}

pub fn tableau_to_json(t: &Tableau) -> Value {
    json!(t.rows())
}

pub fn flavor_from_json(v: &Value, path: &str) -> Result<Flavor, ParseError> {
    match v.as_str() {
        Some("HT") | Some("ht") | Some("hodge-tate") => Ok(Flavor::HodgeTate),
        Some("dR") | Some("dr") | Some("de-rham") => Ok(Flavor::DeRham),
        _ => err(path, "flavor must be \"HT\" or \"dR\""),
    }
}

pub fn class_from_json(v: &Value) -> Result<ClassData, ParseError> {
    let flavor = flavor_from_json(field(v, "flavor", "$")?, "$.flavor")?;
    let blocks = array(field(v, "blocks", "$")?, "$.blocks")?
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let p = format!("$.blocks[{i}]");
            let weight = element_from_json(field(b, "weight", &p)?, None, &format!("{p}.weight"))?;
            let depth = match b.get("depth") {
                Some(d) => usize_of(d, &format!("{p}.depth"))?,
                None => 0,
            };
            Ok(Block::new(weight, depth))
        })
        .collect::<Result<Vec<_>, ParseError>>()?;
    ClassData::new(flavor, blocks).or_else(|e| err("$", e.to_string()))
}

pub fn class_to_json(a: &ClassData) -> Value {
    let blocks: Vec<Value> =
        a.blocks().iter().map(|b| json!({"weight": element_to_json(&b.weight), "depth": b.depth})).collect();
    json!({"flavor": a.flavor().to_string(), "blocks": blocks})
}

fn labels_from_json(v: &Value, path: &str) -> Result<Vec<String>, ParseError> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| match x {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            _ => err(&format!("{path}[{i}]"), "expected a label"),
        })
        .collect()
}

/// {"embeddings": [...], "weights": [[...], ...]}; a bare array of weights
/// is read as a single embedding "h1".
pub fn weight_system_from_json(v: &Value) -> Result<WeightSystem, ParseError> {
    let list = |x: &Value, p: &str| -> Result<Vec<AlgebraElement>, ParseError> {
        array(x, p)?.iter().enumerate().map(|(i, w)| element_from_json(w, None, &format!("{p}[{i}]"))).collect()
    };
    if v.is_array() {
        return Ok(WeightSystem::single(list(v, "$")?));
    }
    let weights = array(field(v, "weights", "$")?, "$.weights")?
        .iter()
        .enumerate()
        .map(|(i, x)| list(x, &format!("$.weights[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let embeddings = match v.get("embeddings") {
        Some(e) => labels_from_json(e, "$.embeddings")?,
        None => (1..=weights.len()).map(|i| format!("h{i}")).collect(),
    };
    WeightSystem::new(embeddings, weights).or_else(|e| err("$", e.to_string()))
}

pub fn weight_system_to_json(w: &WeightSystem) -> Value {
    let weights: Vec<Value> =
        w.weights().iter().map(|ws| Value::Array(ws.iter().map(element_to_json).collect())).collect();
    json!({"embeddings": w.embeddings(), "weights": weights})
}

pub fn character_weights_from_json(v: &Value) -> Result<CharacterWeights, ParseError> {
    let weights = array(field(v, "weights", "$")?, "$.weights")?
        .iter()
        .enumerate()
        .map(|(i, w)| element_from_json(w, None, &format!("$.weights[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let embeddings = match v.get("embeddings") {
        Some(e) => labels_from_json(e, "$.embeddings")?,
        None => (1..=weights.len()).map(|i| format!("h{i}")).collect(),
    };
    if embeddings.len() != weights.len() {
        return err("$", "one weight per embedding is required");
    }
    Ok(CharacterWeights { embeddings, weights })
}

pub fn character_weights_to_json(c: &CharacterWeights) -> Value {
    json!({"embeddings": c.embeddings, "weights": c.weights.iter().map(element_to_json).collect::<Vec<_>>()})
}

pub fn witness_to_json(w: &Witness) -> Value {
    match w {
        Witness::TensorSum { embedding, i, j, sum } => {
            json!({"embedding": embedding, "i": i, "j": j, "sum": element_to_json(sum)})
        }
        Witness::SchurSum { embedding, tableau, sum } => {
            json!({"embedding": embedding, "tableau": tableau_to_json(tableau), "sum": element_to_json(sum)})
        }
    }
}

pub fn shape_from_json(v: &Value) -> Result<GaloisShape, ParseError> {
    let table = array(field(v, "group", "$")?, "$.group")?
        .iter()
        .enumerate()
        .map(|(i, r)| usize_list(r, &format!("$.group[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let inertia = usize_list(field(v, "inertia", "$")?, "$.inertia")?;
    let omega = usize_of(field(v, "omega", "$")?, "$.omega")?;
    let f = usize_of(field(v, "f", "$")?, "$.f")?;
    let deg = v.get("deg").map(|d| usize_list(d, "$.deg")).transpose()?;
    GaloisShape::new(table, inertia, omega, f, deg).or_else(|e| err("$", e.to_string()))
}

fn shape_fields(s: &GaloisShape, out: &mut Map<String, Value>) {
    out.insert("group".into(), json!(s.table()));
    out.insert("inertia".into(), json!(s.inertia()));
    out.insert("omega".into(), json!(s.omega()));
    out.insert("f".into(), json!(s.f()));
    out.insert("deg".into(), json!(s.degrees()));
}

pub fn module_from_json(v: &Value) -> Result<PhiNGalModule<AlgebraElement>, ParseError> {
    let shape = Arc::new(shape_from_json(v)?);
    let alg = match v.get("E") {
        Some(m) => algebra_from_json(m, "$.E")?,
        None => QuotientAlgebra::rationals(),
    };
    let f = shape.f();
    let prime = match v.get("p") {
        Some(p) => rational_from_json(p, "$.p")?,
        None => Rational::from_integer(2),
    };
    let phi = etale_matrix_from_json(field(v, "phi", "$")?, &alg, f, "$.phi")?;
    let n = etale_matrix_from_json(field(v, "N", "$")?, &alg, f, "$.N")?;
    let rho_obj = field(v, "rho", "$")?
        .as_object()
        .ok_or_else(|| ParseError { path: "$.rho".into(), msg: "expected an object keyed by element".into() })?;
    let mut rho = Vec::with_capacity(shape.order());
    for g in shape.elements() {
        let key = g.to_string();
        let p = format!("$.rho.{key}");
        let m = rho_obj
            .get(&key)
            .ok_or_else(|| ParseError { path: "$.rho".into(), msg: format!("missing element {key}") })?;
        rho.push(etale_matrix_from_json(m, &alg, f, &p)?);
    }
    if rho_obj.len() != shape.order() {
        return err("$.rho", "keys must be exactly the group elements");
    }
    PhiNGalModule::new(shape, prime, phi, n, rho).or_else(|e| err("$", e.to_string()))
}

pub fn module_to_json(d: &PhiNGalModule<AlgebraElement>) -> Value {
    let mut out = Map::new();
    let alg = &d.parent().base;
    if !alg.is_rationals() {
        out.insert("E".into(), rationals_to_json(alg.modulus()));
    }
    shape_fields(d.shape(), &mut out);
    out.insert("p".into(), rational_to_json(d.prime()));
    out.insert("phi".into(), module_matrix(d.phi()));
    out.insert("N".into(), module_matrix(d.nmat()));
    let rho: Map<String, Value> =
        d.rho_all().iter().enumerate().map(|(g, m)| (g.to_string(), module_matrix(m))).collect();
    out.insert("rho".into(), Value::Object(rho));
    Value::Object(out)
}

/// Module with coefficients in F = E[x]/(m); scalars are {"ext": [...]}.
pub fn extended_module_to_json(d: &PhiNGalModule<Ext<AlgebraElement>>) -> Value {
    let mut out = Map::new();
    let field_alg = &d.parent().base;
    out.insert("F".into(), json!({"modulus": field_alg.modulus().iter().map(element_to_json).collect::<Vec<_>>()}));
    shape_fields(d.shape(), &mut out);
    out.insert("p".into(), rational_to_json(d.prime()));
    out.insert("phi".into(), matrix_to_json(d.phi()));
    out.insert("N".into(), matrix_to_json(d.nmat()));
    let rho: Map<String, Value> =
        d.rho_all().iter().enumerate().map(|(g, m)| (g.to_string(), matrix_to_json(m))).collect();
    out.insert("rho".into(), Value::Object(rho));
    Value::Object(out)
}

pub fn character_to_json<R: JsonScalar>(c: &Character<R>) -> Value {
    let values: Map<String, Value> = c.values().iter().map(|(g, v)| (g.to_string(), v.to_json())).collect();
    Value::Object(values)
}

pub fn character_from_json(
    v: &Value,
    alg: Option<&Arc<QuotientAlgebra>>,
) -> Result<Character<AlgebraElement>, ParseError> {
    let obj = v
        .as_object()
        .ok_or_else(|| ParseError { path: "$".into(), msg: "expected an object keyed by element".into() })?;
    let mut values = BTreeMap::new();
    for (k, x) in obj {
        let g: usize = k.parse().or_else(|_| err("$", format!("bad element key \"{k}\"")))?;
        values.insert(g, element_from_json(x, alg, &format!("$.{k}"))?);
    }
    Ok(Character::new(values))
}

pub fn verdict_to_json(v: &Verdict) -> Value {
    json!({"name": v.name, "passed": v.passed, "witness": v.witness})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pst::dicyclic;
    use crate::pst::generator::{build_module, invariant_characters, Monodromy};
    use rand::SeedableRng;

    #[test]
    fn scalars_round_trip() {
        let q: Rational = "-3/4".parse().unwrap();
        assert_eq!(rational_to_json(&q), json!("-3/4"));
        assert_eq!(rational_from_json(&json!("5"), "$").unwrap(), Rational::from_integer(5));
        assert_eq!(rational_from_json(&json!(7), "$").unwrap(), Rational::from_integer(7));
        assert!(rational_from_json(&json!("1/0"), "$").is_err());
        let i = AlgebraElement::generator(&QuotientAlgebra::from_integers(&[1, 0, 1]).unwrap());
        assert_eq!(element_from_json(&element_to_json(&i), None, "$").unwrap(), i);
    }

    #[test]
    fn class_round_trip() {
        let v = json!({"flavor": "HT", "blocks": [{"weight": "1/2", "depth": 1}, {"weight": "3"}]});
        let a = class_from_json(&v).unwrap();
        assert_eq!(a.rank(), 3);
        assert_eq!(class_from_json(&class_to_json(&a)).unwrap(), a);
        let e = class_from_json(&json!({"flavor": "HT", "blocks": [{"weight": "x"}]})).unwrap_err();
        assert_eq!(e.path, "$.blocks[0].weight");
    }

    #[test]
    fn module_round_trip() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let shape = Arc::new(dicyclic(2).unwrap());
        let planted = invariant_characters(&shape, None).into_iter().last().unwrap();
        let eta = planted.character(&shape);
        let d = build_module(&mut rng, &shape, &eta, &planted.field, 2, Monodromy::Jordan, &Rational::from_integer(3));
        let back = module_from_json(&module_to_json(&d)).unwrap();
        assert_eq!(back, d);
    }
}
