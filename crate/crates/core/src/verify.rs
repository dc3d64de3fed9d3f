//! Independent replay of certificates. Reads the JSON document directly and
//! uses its own model of the groups: `a^m b^n` is the pair `(m, t)` with
//! `t = (-1)^m n`, multiplied as `(m1 + m2, t1 + (-1)^m1 t2)`, i.e. the
//! semidirect product `Z ⋉ Z`; the finite quotients reduce `m` mod `p` and
//! `t` mod `q`. Nothing from the search code is reused except JSON and
//! SHA-256.

use std::collections::{BTreeMap, HashMap};

use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

const FORMAT: &str = "klein-obstruction-certificate/1";
/// Upper bound on `|Q|^arity` for exhaustive relation checks.
const MAX_ENUMERATION: u64 = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub outcome: String,
    pub strategy: String,
    pub checks: Vec<String>,
}

fn reject<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Rejected(msg.into()))
}

/// `(m, t)`; in a quotient `m` lives mod `p` and `t` mod `q`.
type El = (i64, i64);

#[derive(Clone, Copy)]
struct Law {
    /// `None` for the infinite group.
    quotient: Option<(i64, i64)>,
}

impl Law {
    fn sign(m: i64) -> i64 {
        if m.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    fn norm(&self, (m, t): El) -> El {
        match self.quotient {
            Some((p, q)) => (m.rem_euclid(p), t.rem_euclid(q)),
            None => (m, t),
        }
    }

    fn element(&self, m: i64, n: i64) -> El {
        self.norm((m, Self::sign(m) * n))
    }

    fn mul(&self, x: El, y: El) -> El {
        self.norm((x.0 + y.0, x.1 + Self::sign(x.0) * y.1))
    }

    fn inv(&self, x: El) -> El {
        self.norm((-x.0, -Self::sign(x.0) * x.1))
    }

    fn one(&self) -> El {
        (0, 0)
    }

    /// `chi(a) = -1`, `chi(b) = 1`.
    fn chi(x: El) -> i64 {
        Self::sign(x.0)
    }

    /// The four generators `(b,1), (1,b), (c,1), (1,c)` with `c = a b^-1`.
    fn generator(&self, name: &str) -> Result<((El, El), i64)> {
        let b = self.element(0, 1);
        let c = self.mul(self.element(1, 0), self.inv(b));
        let one = self.one();
        Ok(match name {
            "b-left" => ((b, one), 1),
            "b-right" => ((one, b), 1),
            "c-left" => ((c, one), -1),
            "c-right" => ((one, c), -1),
            other => return reject(format!("unknown generator {other}")),
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Basis {
    Alpha,
    Group,
    Pair,
}

type Comb = BTreeMap<Vec<El>, i64>;

fn add(c: &mut Comb, k: Vec<El>, v: i64) {
    let e = c.entry(k.clone()).or_insert(0);
    *e += v;
    if *e == 0 {
        c.remove(&k);
    }
}

/// `s . key - chi(s) key` in the given basis.
fn relation(law: &Law, basis: Basis, gen: (El, El), chi: i64, key: &[El]) -> Comb {
    let (g, h) = gen;
    let hinv = law.inv(h);
    let mut out = Comb::new();
    match basis {
        Basis::Pair => add(&mut out, vec![law.mul(g, key[0]), law.mul(h, key[1])], 1),
        Basis::Group => add(
            &mut out,
            key.iter().map(|x| law.mul(law.mul(g, *x), hinv)).collect(),
            1,
        ),
        Basis::Alpha => {
            let shift = law.mul(g, hinv);
            let mut partial: Vec<(Vec<El>, i64)> = vec![(Vec::new(), 1)];
            for x in key {
                let moved = law.mul(law.mul(g, *x), hinv);
                let mut next = Vec::new();
                for (k, c) in &partial {
                    for (y, s) in [(moved, 1), (shift, -1)] {
                        if y != law.one() {
                            let mut k2 = k.clone();
                            k2.push(y);
                            next.push((k2, c * s));
                        }
                    }
                }
                partial = next;
            }
            for (k, c) in partial {
                add(&mut out, k, c);
            }
        }
    }
    add(&mut out, key.to_vec(), -chi);
    out
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name)
        .ok_or_else(|| Error::Rejected(format!("missing field {name}")))
}

fn int(v: &Value) -> Result<i64> {
    v.as_i64()
        .ok_or_else(|| Error::Rejected(format!("expected an integer, got {v}")))
}

fn string<'a>(v: &'a Value, name: &str) -> Result<&'a str> {
    field(v, name)?
        .as_str()
        .ok_or_else(|| Error::Rejected(format!("{name} is not a string")))
}

fn array<'a>(v: &'a Value, name: &str) -> Result<&'a Vec<Value>> {
    field(v, name)?
        .as_array()
        .ok_or_else(|| Error::Rejected(format!("{name} is not an array")))
}

fn key(law: &Law, v: &Value) -> Result<Vec<El>> {
    let slots = v
        .as_array()
        .ok_or_else(|| Error::Rejected("key is not an array".into()))?;
    slots
        .iter()
        .map(|s| match s.as_array().map(|a| a.as_slice()) {
            Some([m, n]) => Ok(law.element(int(m)?, int(n)?)),
            _ => reject("key slot is not a pair"),
        })
        .collect()
}

struct Target {
    basis: Basis,
    arity: usize,
    /// Raw rows in normal-form coordinates.
    rows: Vec<(Vec<(i64, i64)>, i64)>,
}

impl Target {
    fn parse(v: &Value) -> Result<Self> {
        let basis = match string(v, "basis")? {
            "alpha" => Basis::Alpha,
            "group" => Basis::Group,
            "pair" => Basis::Pair,
            other => return reject(format!("unknown basis {other}")),
        };
        let arity = usize::try_from(int(field(v, "arity")?)?)
            .map_err(|_| Error::Rejected("negative arity".into()))?;
        if arity == 0 || (basis == Basis::Pair && arity != 2) {
            return reject(format!("arity {arity} invalid for this basis"));
        }
        let mut rows = Vec::new();
        for row in array(v, "rows")? {
            let r: Vec<i64> = row
                .as_array()
                .ok_or_else(|| Error::Rejected("row is not an array".into()))?
                .iter()
                .map(int)
                .collect::<Result<_>>()?;
            if r.len() != 2 * arity + 1 {
                return reject(format!("row of length {} for arity {arity}", r.len()));
            }
            if basis == Basis::Alpha && r[..2 * arity].chunks(2).any(|s| s == [0, 0]) {
                return reject("identity slot in an augmentation-ideal target");
            }
            rows.push((
                r[..2 * arity].chunks(2).map(|s| (s[0], s[1])).collect(),
                r[2 * arity],
            ));
        }
        Ok(Self { basis, arity, rows })
    }

    /// The target pushed through `law`; identity slots vanish in the alpha
    /// basis.
    fn comb(&self, law: &Law) -> Comb {
        let mut out = Comb::new();
        for (slots, c) in &self.rows {
            let k: Vec<El> = slots.iter().map(|&(m, n)| law.element(m, n)).collect();
            if self.basis == Basis::Alpha && k.contains(&law.one()) {
                continue;
            }
            add(&mut out, k, *c);
        }
        out
    }
}

fn relation_sum(
    law: &Law,
    basis: Basis,
    arity: usize,
    terms: &[Value],
    modulus: u64,
) -> Result<Comb> {
    let mut out = Comb::new();
    for t in terms {
        let (gen, chi) = law.generator(string(t, "generator")?)?;
        let seed = key(law, field(t, "seed")?)?;
        if seed.len() != arity {
            return reject("relation seed has the wrong arity");
        }
        if basis == Basis::Alpha && seed.contains(&law.one()) {
            return reject("relation seed has an identity slot");
        }
        let coeff = int(field(t, "coefficient")?)?;
        for (k, v) in relation(law, basis, gen, chi, &seed) {
            let scaled = v
                .checked_mul(coeff)
                .ok_or_else(|| Error::Rejected("coefficient overflow".into()))?;
            add(&mut out, k, scaled);
        }
    }
    Ok(reduce(out, modulus))
}

fn reduce(c: Comb, modulus: u64) -> Comb {
    if modulus == 0 {
        return c;
    }
    c.into_iter()
        .map(|(k, v)| (k, v.rem_euclid(modulus as i64)))
        .filter(|(_, v)| *v != 0)
        .collect()
}

fn quotient_law(w: &Value) -> Result<(Law, u64)> {
    let (p, q) = (int(field(w, "p")?)?, int(field(w, "q")?)?);
    if p < 2 || p % 2 != 0 || q < 1 {
        return reject(format!("Q({p}, {q}) is not a quotient with p even"));
    }
    let modulus = field(w, "modulus")?
        .as_u64()
        .ok_or_else(|| Error::Rejected("bad modulus".into()))?;
    if modulus == 1 || modulus > i64::MAX as u64 {
        return reject(format!("modulus {modulus} is not usable"));
    }
    Ok((
        Law {
            quotient: Some((p, q)),
        },
        modulus,
    ))
}

fn elements(law: &Law) -> Vec<El> {
    let (p, q) = law.quotient.expect("finite");
    (0..p).flat_map(|m| (0..q).map(move |t| (m, t))).collect()
}

fn check_functional(w: &Value, target: &Target, checks: &mut Vec<String>) -> Result<()> {
    if target.basis != Basis::Alpha {
        return reject("functionals apply to augmentation-ideal targets");
    }
    let (law, modulus) = quotient_law(w)?;
    if modulus == 0 {
        return reject("a functional needs a finite modulus");
    }
    let m = modulus as i128;
    let mut lambda: HashMap<Vec<El>, i128> = HashMap::new();
    for e in array(w, "entries")? {
        let k = key(&law, field(e, "key")?)?;
        if k.len() != target.arity || k.contains(&law.one()) {
            return reject("functional entry is not a basis element");
        }
        let v = field(e, "value")?
            .as_u64()
            .ok_or_else(|| Error::Rejected("bad functional value".into()))?;
        lambda.insert(k, v as i128 % m);
    }
    let eval = |c: &Comb| {
        c.iter().fold(0i128, |acc, (k, v)| {
            (acc + lambda.get(k).unwrap_or(&0) * *v as i128).rem_euclid(m)
        })
    };
    let nonid: Vec<El> = elements(&law)
        .into_iter()
        .filter(|x| *x != law.one())
        .collect();
    let rank = (nonid.len() as u64)
        .checked_pow(target.arity as u32)
        .unwrap_or(u64::MAX);
    if rank > MAX_ENUMERATION {
        return reject(format!(
            "quotient module rank {rank} too large to enumerate"
        ));
    }
    let mut seed = vec![0usize; target.arity];
    let mut count = 0u64;
    loop {
        let k: Vec<El> = seed.iter().map(|&i| nonid[i]).collect();
        for name in ["b-left", "b-right", "c-left", "c-right"] {
            let (gen, chi) = law.generator(name)?;
            if eval(&relation(&law, Basis::Alpha, gen, chi, &k)) != 0 {
                return reject(format!("functional does not vanish on {name} at {k:?}"));
            }
            count += 1;
        }
        let mut i = target.arity;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            seed[i] += 1;
            if seed[i] < nonid.len() {
                break;
            }
            seed[i] = 0;
        }
        if seed.iter().all(|&s| s == 0) {
            break;
        }
    }
    checks.push(format!(
        "functional vanishes on all {count} quotient relations mod {modulus}"
    ));
    let value = eval(&target.comb(&law));
    let claimed = field(w, "value")?
        .as_u64()
        .ok_or_else(|| Error::Rejected("bad value".into()))? as i128;
    if value == 0 || value != claimed % m {
        return reject(format!(
            "functional takes {value} on the target, certificate claims {claimed}"
        ));
    }
    checks.push(format!(
        "functional takes {value} != 0 mod {modulus} on the target"
    ));
    Ok(())
}

/// Replays a certificate document, returning the checks performed.
pub fn verify_certificate(text: &str) -> Result<VerifyReport> {
    let doc: Value = serde_json::from_str(text)?;
    let mut checks = Vec::new();
    if string(&doc, "format")? != FORMAT {
        return reject(format!("unknown format {}", string(&doc, "format")?));
    }
    let claimed_hash = string(&doc, "replay_hash")?.to_string();
    let mut body = doc.clone();
    body.as_object_mut().expect("object").remove("replay_hash");
    let hash = hex::encode(Sha256::digest(serde_json::to_vec(&body)?));
    if hash != claimed_hash {
        return reject(format!("replay hash mismatch: document hashes to {hash}"));
    }
    checks.push("replay hash matches".to_string());

    let outcome = string(&doc, "outcome")?.to_string();
    let strategy = string(&doc, "strategy")?.to_string();
    let target = Target::parse(field(&doc, "target")?)?;
    let w = field(&doc, "witness")?;
    let kind = string(w, "kind")?;
    let pi = Law { quotient: None };
    match (outcome.as_str(), kind) {
        ("zero", "relations") => {
            let sum = relation_sum(&pi, target.basis, target.arity, array(w, "terms")?, 0)?;
            if sum != target.comb(&pi) {
                return reject("relation terms do not sum to the target");
            }
            checks.push(format!(
                "{} relation terms sum to the target",
                array(w, "terms")?.len()
            ));
        }
        ("nonzero", "character") => {
            if target.basis != Basis::Pair {
                return reject("the character certificate needs a Z[pi x pi] target");
            }
            let value: i64 = target
                .comb(&pi)
                .iter()
                .map(|(k, c)| c * Law::chi(k[0]) * Law::chi(k[1]))
                .sum();
            if value == 0 || value != int(field(w, "value")?)? {
                return reject(format!("chi of the target is {value}"));
            }
            checks.push(format!(
                "chi(target) = {value}, and chi kills every relation"
            ));
        }
        ("nonzero", "functional") => check_functional(w, &target, &mut checks)?,
        ("inconclusive", "quotient-relations") => {
            let (law, modulus) = quotient_law(w)?;
            let sum = relation_sum(
                &law,
                target.basis,
                target.arity,
                array(w, "terms")?,
                modulus,
            )?;
            if sum != reduce(target.comb(&law), modulus) {
                return reject("quotient relation terms do not sum to the image");
            }
            checks.push("image equals the quotient relation combination".to_string());
        }
        ("inconclusive", "none") => checks.push("nothing to replay".to_string()),
        (o, k) => return reject(format!("a {k} witness cannot support outcome {o}")),
    }
    Ok(VerifyReport {
        outcome,
        strategy,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn independent_law_matches_normal_form() {
        let law = Law { quotient: None };
        // b a = a b^-1
        let (a, b) = (law.element(1, 0), law.element(0, 1));
        assert_eq!(law.mul(b, a), law.mul(a, law.inv(b)));
        // a^m b^n as a product of letters
        for m in -3i64..=3 {
            for n in -3i64..=3 {
                let mut x = law.one();
                for _ in 0..m.abs() {
                    x = law.mul(x, if m > 0 { a } else { law.inv(a) });
                }
                for _ in 0..n.abs() {
                    x = law.mul(x, if n > 0 { b } else { law.inv(b) });
                }
                assert_eq!(x, law.element(m, n));
            }
        }
        let q = Law {
            quotient: Some((4, 3)),
        };
        let (a, b) = (q.element(1, 0), q.element(0, 1));
        assert_eq!(q.mul(q.mul(a, a), q.mul(a, a)), q.one());
        assert_eq!(q.mul(b, q.mul(b, b)), q.one());
        assert_eq!(q.mul(q.inv(a), q.mul(b, a)), q.inv(b));
    }

    #[test]
    fn rejects_garbage() {
        assert!(verify_certificate("{}").is_err());
        assert!(verify_certificate("[1]").is_err());
    }
}
