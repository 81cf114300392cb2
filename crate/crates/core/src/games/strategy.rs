//! Strategy types for the two parity games and their JSON file format.
//!
//! A *semi-classical* strategy commits Alice to a single `n`-qubit state and
//! gives both guessers a shared deterministic answer table over challenges.
//! A *quantum* strategy lets Alice keep entanglement with the guessers: a
//! joint state on `A (x) B (x) C` plus, for every challenge, binary projective
//! measurements for each guesser.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::qcore::{ComplexMatrix, StateVector};
use crate::states::{attack_state, predicted_parity, AttackVariant};

/// Which bit of the measured string the guessers must produce.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GameVariant {
    /// Guess `parity(x)`; the challenge is `theta` alone.
    Xor,
    /// Guess `r . x mod 2`; the challenge is the pair `(theta, r)`.
    Gl,
}

/// A game instance: variant plus number of qubits.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct GameSpec {
    pub variant: GameVariant,
    pub n: usize,
}

impl GameSpec {
    pub fn new(variant: GameVariant, n: usize) -> Result<Self> {
        if n == 0 || n > crate::bits::MAX_LEN {
            return Err(Error::contract(format!("game size n={n} out of range")));
        }
        Ok(GameSpec { variant, n })
    }

    /// Number of distinct challenges: `2^n` for XOR, `4^n` for GL.
    pub fn challenge_count(&self) -> usize {
        match self.variant {
            GameVariant::Xor => 1 << self.n,
            GameVariant::Gl => 1 << (2 * self.n),
        }
    }

    /// Decodes a challenge index into `(theta, r)`.
    ///
    /// Indices enumerate `theta` in little-endian integer order, and for GL
    /// the pair as `theta.index() * 2^n + r.index()`.
    pub fn challenge(&self, index: usize) -> (BitString, Option<BitString>) {
        debug_assert!(index < self.challenge_count());
        match self.variant {
            GameVariant::Xor => (
                BitString::from_index(self.n, index).expect("index in range"),
                None,
            ),
            GameVariant::Gl => {
                let theta = BitString::from_index(self.n, index >> self.n).expect("index in range");
                let r = BitString::from_index(self.n, index & ((1 << self.n) - 1))
                    .expect("index in range");
                (theta, Some(r))
            }
        }
    }

    /// The bit the guessers must reproduce for outcome `x` (amplitude order)
    /// under the challenge at `index`.
    pub fn target_bit(&self, index: usize, x_amp: usize) -> bool {
        match self.variant {
            GameVariant::Xor => (x_amp.count_ones() & 1) == 1,
            GameVariant::Gl => {
                let (_, r) = self.challenge(index);
                let r_amp = r.expect("GL challenge").amp_index();
                ((r_amp & x_amp).count_ones() & 1) == 1
            }
        }
    }
}

/// A deterministic answer per challenge.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AnswerTable {
    spec: GameSpec,
    bits: Vec<bool>,
}

impl AnswerTable {
    pub fn new(spec: GameSpec, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != spec.challenge_count() {
            return Err(Error::contract(format!(
                "answer table has {} entries, expected {}",
                bits.len(),
                spec.challenge_count()
            )));
        }
        Ok(AnswerTable { spec, bits })
    }

    pub fn constant(spec: GameSpec, value: bool) -> Self {
        let len = spec.challenge_count();
        AnswerTable { spec, bits: vec![value; len] }
    }

    pub fn from_fn(spec: GameSpec, mut f: impl FnMut(usize) -> bool) -> Self {
        let bits = (0..spec.challenge_count()).map(|i| f(i)).collect();
        AnswerTable { spec, bits }
    }

    /// Unpacks a table from an integer, challenge `k` at bit `k`. This is the
    /// enumeration order of the exhaustive searches.
    pub fn from_packed(spec: GameSpec, packed: u64) -> Result<Self> {
        let len = spec.challenge_count();
        if len > 64 {
            return Err(Error::size(format!("{len} challenges do not fit a packed u64")));
        }
        if len < 64 && packed >> len != 0 {
            return Err(Error::contract("packed table has bits beyond the challenge count"));
        }
        Ok(AnswerTable {
            spec,
            bits: (0..len).map(|k| packed >> k & 1 == 1).collect(),
        })
    }

    pub fn spec(&self) -> GameSpec {
        self.spec
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    #[inline]
    pub fn bit(&self, index: usize) -> bool {
        self.bits[index]
    }

    pub fn xor_answer(&self, theta: &BitString) -> bool {
        debug_assert_eq!(self.spec.variant, GameVariant::Xor);
        self.bits[theta.index()]
    }

    pub fn gl_answer(&self, theta: &BitString, r: &BitString) -> bool {
        debug_assert_eq!(self.spec.variant, GameVariant::Gl);
        self.bits[(theta.index() << self.spec.n) | r.index()]
    }

    /// Hex encoding of the flat bit array, most significant nibble first:
    /// entry `k` sits in hex character `k / 4` with weight `8 >> (k % 4)`,
    /// and a final partial nibble is padded with low zeros.
    pub fn to_hex(&self) -> String {
        let mut out = String::with_capacity(self.bits.len().div_ceil(4));
        for chunk in self.bits.chunks(4) {
            let mut nibble = 0u32;
            for (pos, &b) in chunk.iter().enumerate() {
                if b {
                    nibble |= 8 >> pos;
                }
            }
            out.push(char::from_digit(nibble, 16).expect("nibble"));
        }
        out
    }

    pub fn from_hex(spec: GameSpec, hex: &str) -> Result<Self> {
        let len = spec.challenge_count();
        let want_chars = len.div_ceil(4);
        if hex.len() != want_chars {
            return Err(Error::input(format!(
                "answer table hex has {} characters, expected {want_chars} for {len} challenges",
                hex.len()
            )));
        }
        let mut bits = Vec::with_capacity(len);
        for (pos, ch) in hex.chars().enumerate() {
            let nibble = ch
                .to_digit(16)
                .ok_or_else(|| Error::input(format!("invalid hex digit {ch:?} in answer table")))?;
            for k in 0..4 {
                let bit = nibble & (8 >> k) != 0;
                if pos * 4 + k < len {
                    bits.push(bit);
                } else if bit {
                    return Err(Error::input("nonzero padding bits in answer table hex"));
                }
            }
        }
        AnswerTable::new(spec, bits)
    }
}

/// Fixed Alice state plus a shared answer table.
#[derive(Clone, PartialEq, Debug)]
pub struct SemiClassicalStrategy {
    pub alice_state: StateVector,
    pub table: AnswerTable,
}

impl SemiClassicalStrategy {
    pub fn new(alice_state: StateVector, table: AnswerTable) -> Result<Self> {
        let n = table.spec().n;
        if alice_state.dim() != 1 << n {
            return Err(Error::contract(format!(
                "Alice state has dimension {}, expected {} for n={n}",
                alice_state.dim(),
                1 << n
            )));
        }
        Ok(SemiClassicalStrategy { alice_state, table })
    }

    pub fn spec(&self) -> GameSpec {
        self.table.spec()
    }

    pub fn n(&self) -> usize {
        self.table.spec().n
    }

    /// The optimal XOR strategy built from an attack state: Alice sends
    /// `attack_state(y, variant)` and everyone answers with the parity that
    /// state is biased toward.
    pub fn xor_attack(y: &BitString, variant: AttackVariant) -> Result<Self> {
        let spec = GameSpec::new(GameVariant::Xor, y.len())?;
        let mut bits = Vec::with_capacity(spec.challenge_count());
        for theta in BitString::all(y.len()) {
            bits.push(predicted_parity(y, &theta, variant)?);
        }
        SemiClassicalStrategy::new(attack_state(y, variant)?, AnswerTable::new(spec, bits)?)
    }
}

/// Entrywise tolerance for accepting a measurement family as projective.
pub const PROJ_TOL: f64 = 1e-10;

/// Per-challenge binary projective measurements for the two guessers.
#[derive(Clone, PartialEq, Debug)]
pub struct MeasurementFamilies {
    spec: GameSpec,
    dim_b: usize,
    dim_c: usize,
    p: Vec<[ComplexMatrix; 2]>,
    q: Vec<[ComplexMatrix; 2]>,
}

fn check_projective(side: &str, idx: usize, pair: &[ComplexMatrix; 2], dim: usize) -> Result<()> {
    let identity = ComplexMatrix::identity(dim)?;
    for (b, m) in pair.iter().enumerate() {
        if m.rows() != dim || m.cols() != dim {
            return Err(Error::contract(format!(
                "{side}[{idx}][{b}] is {}x{}, expected {dim}x{dim}",
                m.rows(),
                m.cols()
            )));
        }
        let defect = m.hermiticity_defect()?;
        if defect > PROJ_TOL {
            return Err(Error::contract(format!(
                "{side}[{idx}][{b}] is not Hermitian (defect {defect:.3e})"
            )));
        }
        let idem = m.matmul(m)?.max_abs_diff(m)?;
        if idem > PROJ_TOL {
            return Err(Error::contract(format!(
                "{side}[{idx}][{b}] is not idempotent (defect {idem:.3e})"
            )));
        }
    }
    let complete = pair[0].add(&pair[1])?.max_abs_diff(&identity)?;
    if complete > PROJ_TOL {
        return Err(Error::contract(format!(
            "{side}[{idx}] outcomes do not sum to the identity (defect {complete:.3e})"
        )));
    }
    Ok(())
}

impl MeasurementFamilies {
    pub fn new(
        spec: GameSpec,
        dim_b: usize,
        dim_c: usize,
        p: Vec<[ComplexMatrix; 2]>,
        q: Vec<[ComplexMatrix; 2]>,
    ) -> Result<Self> {
        if dim_b == 0 || dim_c == 0 {
            return Err(Error::contract("guesser dimensions must be positive"));
        }
        let count = spec.challenge_count();
        if p.len() != count || q.len() != count {
            return Err(Error::contract(format!(
                "measurement families have {} and {} challenges, expected {count}",
                p.len(),
                q.len()
            )));
        }
        for (idx, pair) in p.iter().enumerate() {
            check_projective("proj_p", idx, pair, dim_b)?;
        }
        for (idx, pair) in q.iter().enumerate() {
            check_projective("proj_q", idx, pair, dim_c)?;
        }
        Ok(MeasurementFamilies { spec, dim_b, dim_c, p, q })
    }

    /// Scalar (one-dimensional) families that deterministically answer with
    /// the table bit; this embeds a semi-classical strategy's answers.
    pub fn from_answer_table(table: &AnswerTable) -> Self {
        let one = ComplexMatrix::identity(1).expect("1x1");
        let zero = ComplexMatrix::zeros(1, 1).expect("1x1");
        let mk = |hit: bool| if hit { one.clone() } else { zero.clone() };
        let count = table.spec().challenge_count();
        let mut p = Vec::with_capacity(count);
        for idx in 0..count {
            let c = table.bit(idx);
            p.push([mk(!c), mk(c)]);
        }
        MeasurementFamilies {
            spec: table.spec(),
            dim_b: 1,
            dim_c: 1,
            p: p.clone(),
            q: p,
        }
    }

    pub fn spec(&self) -> GameSpec {
        self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn dim_c(&self) -> usize {
        self.dim_c
    }

    pub fn challenge_count(&self) -> usize {
        self.spec.challenge_count()
    }

    pub fn p(&self, index: usize) -> &[ComplexMatrix; 2] {
        &self.p[index]
    }

    pub fn q(&self, index: usize) -> &[ComplexMatrix; 2] {
        &self.q[index]
    }
}

/// Entangled strategy: joint state on `A (x) B (x) C` plus measurement
/// families. The amplitude index is `a * dimB * dimC + b * dimC + c`.
#[derive(Clone, PartialEq, Debug)]
pub struct QuantumStrategy {
    pub joint_state: StateVector,
    pub measurements: MeasurementFamilies,
}

impl QuantumStrategy {
    pub fn new(joint_state: StateVector, measurements: MeasurementFamilies) -> Result<Self> {
        let want = (1usize << measurements.n()) * measurements.dim_b() * measurements.dim_c();
        if joint_state.dim() != want {
            return Err(Error::contract(format!(
                "joint state has dimension {}, expected {want}",
                joint_state.dim()
            )));
        }
        Ok(QuantumStrategy { joint_state, measurements })
    }

    pub fn spec(&self) -> GameSpec {
        self.measurements.spec()
    }

    pub fn n(&self) -> usize {
        self.measurements.n()
    }
}

/// Either strategy kind, as read from a strategy file.
#[derive(Clone, PartialEq, Debug)]
pub enum Strategy {
    SemiClassical(SemiClassicalStrategy),
    Quantum(QuantumStrategy),
}

impl Strategy {
    pub fn spec(&self) -> GameSpec {
        match self {
            Strategy::SemiClassical(s) => s.spec(),
            Strategy::Quantum(s) => s.spec(),
        }
    }
}

// --- JSON file format ---------------------------------------------------

type RawAmplitude = [f64; 2];
type RawMatrix = Vec<Vec<RawAmplitude>>;

#[derive(Serialize, Deserialize)]
struct RawAttack {
    y: String,
    variant: String,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawAliceState {
    Attack { attack: RawAttack },
    Amplitudes(Vec<RawAmplitude>),
}

/// On-disk strategy layout. Exactly one of the semi-classical fields
/// (`alice_state` + `answer_table_hex`) or the quantum fields (`dim_b`,
/// `dim_c`, `joint_state`, `proj_p`, `proj_q`) must be present.
#[derive(Serialize, Deserialize)]
struct RawStrategy {
    variant: GameVariant,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    alice_state: Option<RawAliceState>,
    #[serde(skip_serializing_if = "Option::is_none")]
    answer_table_hex: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dim_b: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dim_c: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    joint_state: Option<Vec<RawAmplitude>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    proj_p: Option<Vec<[RawMatrix; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    proj_q: Option<Vec<[RawMatrix; 2]>>,
}

fn amps_from_raw(raw: &[RawAmplitude]) -> Vec<Complex64> {
    raw.iter().map(|&[re, im]| Complex64::new(re, im)).collect()
}

fn amps_to_raw(v: &StateVector) -> Vec<RawAmplitude> {
    v.amps().iter().map(|z| [z.re, z.im]).collect()
}

fn matrix_from_raw(field: &str, idx: usize, raw: &RawMatrix) -> Result<ComplexMatrix> {
    let rows: Vec<Vec<Complex64>> = raw.iter().map(|r| amps_from_raw(r)).collect();
    ComplexMatrix::from_rows(&rows)
        .map_err(|e| Error::input(format!("{field}[{idx}]: {e}")))
}

fn matrix_to_raw(m: &ComplexMatrix) -> RawMatrix {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| [m.get(i, j).re, m.get(i, j).im]).collect())
        .collect()
}

fn family_from_raw(field: &str, raw: &[[RawMatrix; 2]]) -> Result<Vec<[ComplexMatrix; 2]>> {
    raw.iter()
        .enumerate()
        .map(|(idx, pair)| {
            Ok([
                matrix_from_raw(field, idx, &pair[0])?,
                matrix_from_raw(field, idx, &pair[1])?,
            ])
        })
        .collect()
}

/// Parses a strategy from its JSON file contents.
pub fn strategy_from_json(text: &str) -> Result<Strategy> {
    let raw: RawStrategy =
        serde_json::from_str(text).map_err(|e| Error::input(format!("strategy file: {e}")))?;
    let spec = GameSpec::new(raw.variant, raw.n)?;
    let semi = raw.alice_state.is_some() || raw.answer_table_hex.is_some();
    let quantum = raw.proj_p.is_some()
        || raw.proj_q.is_some()
        || raw.joint_state.is_some()
        || raw.dim_b.is_some()
        || raw.dim_c.is_some();
    match (semi, quantum) {
        (true, true) => Err(Error::input(
            "strategy file mixes semi-classical and quantum fields",
        )),
        (false, false) => Err(Error::input(
            "strategy file has neither semi-classical nor quantum fields",
        )),
        (true, false) => {
            let state_raw = raw
                .alice_state
                .as_ref()
                .ok_or_else(|| Error::input("missing field alice_state"))?;
            let hex = raw
                .answer_table_hex
                .as_deref()
                .ok_or_else(|| Error::input("missing field answer_table_hex"))?;
            let alice_state = match state_raw {
                RawAliceState::Amplitudes(a) => StateVector::new(amps_from_raw(a))
                    .map_err(|e| Error::input(format!("alice_state: {e}")))?,
                RawAliceState::Attack { attack } => {
                    let y = BitString::parse(&attack.y)
                        .map_err(|e| Error::input(format!("alice_state.attack.y: {e}")))?;
                    if y.len() != raw.n {
                        return Err(Error::input(format!(
                            "alice_state.attack.y has {} bits, expected n={}",
                            y.len(),
                            raw.n
                        )));
                    }
                    let variant = match attack.variant.as_str() {
                        "phi" => AttackVariant::Phi,
                        "psi" => AttackVariant::Psi,
                        other => {
                            return Err(Error::input(format!(
                                "alice_state.attack.variant must be \"phi\" or \"psi\", got {other:?}"
                            )))
                        }
                    };
                    attack_state(&y, variant)?
                }
            };
            let table = AnswerTable::from_hex(spec, hex)?;
            Ok(Strategy::SemiClassical(SemiClassicalStrategy::new(alice_state, table)?))
        }
        (false, true) => {
            let dim_b = raw.dim_b.ok_or_else(|| Error::input("missing field dim_b"))?;
            let dim_c = raw.dim_c.ok_or_else(|| Error::input("missing field dim_c"))?;
            let joint_raw = raw
                .joint_state
                .as_ref()
                .ok_or_else(|| Error::input("missing field joint_state"))?;
            let p_raw = raw.proj_p.as_ref().ok_or_else(|| Error::input("missing field proj_p"))?;
            let q_raw = raw.proj_q.as_ref().ok_or_else(|| Error::input("missing field proj_q"))?;
            let joint_state = StateVector::new(amps_from_raw(joint_raw))
                .map_err(|e| Error::input(format!("joint_state: {e}")))?;
            let p = family_from_raw("proj_p", p_raw)?;
            let q = family_from_raw("proj_q", q_raw)?;
            let measurements = MeasurementFamilies::new(spec, dim_b, dim_c, p, q)
                .map_err(|e| Error::input(e.to_string()))?;
            Ok(Strategy::Quantum(QuantumStrategy::new(joint_state, measurements)?))
        }
    }
}

/// Serializes a strategy into the JSON file format (states in dense form).
pub fn strategy_to_json(strategy: &Strategy) -> String {
    let raw = match strategy {
        Strategy::SemiClassical(s) => RawStrategy {
            variant: s.spec().variant,
            n: s.n(),
            alice_state: Some(RawAliceState::Amplitudes(amps_to_raw(&s.alice_state))),
            answer_table_hex: Some(s.table.to_hex()),
            dim_b: None,
            dim_c: None,
            joint_state: None,
            proj_p: None,
            proj_q: None,
        },
        Strategy::Quantum(s) => {
            let m = &s.measurements;
            let count = m.challenge_count();
            let pack = |side: fn(&MeasurementFamilies, usize) -> &[ComplexMatrix; 2]| {
                (0..count)
                    .map(|idx| {
                        let pair = side(m, idx);
                        [matrix_to_raw(&pair[0]), matrix_to_raw(&pair[1])]
                    })
                    .collect()
            };
            RawStrategy {
                variant: s.spec().variant,
                n: s.n(),
                alice_state: None,
                answer_table_hex: None,
                dim_b: Some(m.dim_b()),
                dim_c: Some(m.dim_c()),
                joint_state: Some(amps_to_raw(&s.joint_state)),
                proj_p: Some(pack(|m, i| m.p(i))),
                proj_q: Some(pack(|m, i| m.q(i))),
            }
        }
    };
    serde_json::to_string_pretty(&raw).expect("strategy serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xor_spec(n: usize) -> GameSpec {
        GameSpec::new(GameVariant::Xor, n).unwrap()
    }

    #[test]
    fn hex_encoding_is_msb_first() {
        let t = AnswerTable::new(xor_spec(1), vec![true, false]).unwrap();
        assert_eq!(t.to_hex(), "8");
        let t = AnswerTable::new(xor_spec(2), vec![true, false, true, true]).unwrap();
        assert_eq!(t.to_hex(), "b");
        let round = AnswerTable::from_hex(xor_spec(2), "b").unwrap();
        assert_eq!(round, t);
    }

    #[test]
    fn hex_rejects_malformed_input() {
        assert!(AnswerTable::from_hex(xor_spec(2), "bb").is_err()); // wrong length
        assert!(AnswerTable::from_hex(xor_spec(2), "g").is_err()); // bad digit
        // n=1 uses one char with two padding bits, which must be zero
        assert!(AnswerTable::from_hex(xor_spec(1), "9").is_err());
        assert!(AnswerTable::from_hex(xor_spec(1), "c").is_ok());
    }

    #[test]
    fn hex_round_trips_for_gl_tables() {
        let spec = GameSpec::new(GameVariant::Gl, 2).unwrap();
        let t = AnswerTable::from_fn(spec, |i| i % 3 == 0);
        let back = AnswerTable::from_hex(spec, &t.to_hex()).unwrap();
        assert_eq!(back, t);
        assert_eq!(t.to_hex().len(), 4);
    }

    #[test]
    fn packed_enumeration_puts_challenge_k_at_bit_k() {
        let t = AnswerTable::from_packed(xor_spec(2), 0b0110).unwrap();
        assert_eq!(
            (t.bit(0), t.bit(1), t.bit(2), t.bit(3)),
            (false, true, true, false)
        );
        assert!(AnswerTable::from_packed(xor_spec(2), 0x10).is_err());
    }

    #[test]
    fn gl_challenge_index_packs_theta_then_r() {
        let spec = GameSpec::new(GameVariant::Gl, 2).unwrap();
        let (theta, r) = spec.challenge(0b1101);
        assert_eq!(theta.index(), 0b11);
        assert_eq!(r.unwrap().index(), 0b01);
        let table = AnswerTable::from_fn(spec, |i| i == 0b1101);
        assert!(table.gl_answer(
            &BitString::from_index(2, 0b11).unwrap(),
            &BitString::from_index(2, 0b01).unwrap()
        ));
    }

    #[test]
    fn attack_strategy_tabulates_predicted_parities() {
        let y = BitString::parse("01").unwrap();
        let s = SemiClassicalStrategy::xor_attack(&y, AttackVariant::Phi).unwrap();
        for theta in BitString::all(2) {
            assert_eq!(
                s.table.xor_answer(&theta),
                predicted_parity(&y, &theta, AttackVariant::Phi).unwrap()
            );
        }
        assert_eq!(s.alice_state.dim(), 4);
    }

    #[test]
    fn scalar_families_follow_the_table() {
        let spec = GameSpec::new(GameVariant::Gl, 1).unwrap();
        let table = AnswerTable::new(spec, vec![false, true, true, false]).unwrap();
        let fam = MeasurementFamilies::from_answer_table(&table);
        for idx in 0..4 {
            let c = table.bit(idx) as usize;
            assert_eq!(fam.p(idx)[c].get(0, 0).re, 1.0);
            assert_eq!(fam.p(idx)[1 - c].get(0, 0).re, 0.0);
        }
    }

    #[test]
    fn measurement_validation_rejects_non_projectors() {
        let spec = GameSpec::new(GameVariant::Gl, 1).unwrap();
        let half = ComplexMatrix::identity(2).unwrap().scale(Complex64::new(0.5, 0.0));
        let id = ComplexMatrix::identity(2).unwrap();
        let zero = ComplexMatrix::zeros(2, 2).unwrap();
        let good: Vec<[ComplexMatrix; 2]> = (0..4).map(|_| [id.clone(), zero.clone()]).collect();
        let mut bad = good.clone();
        bad[2] = [half.clone(), half.clone()]; // sums to identity but not idempotent
        assert!(MeasurementFamilies::new(spec, 2, 2, good.clone(), good.clone()).is_ok());
        assert!(MeasurementFamilies::new(spec, 2, 2, bad, good).is_err());
    }

    #[test]
    fn semi_classical_json_round_trip() {
        let s = SemiClassicalStrategy::xor_attack(
            &BitString::parse("10").unwrap(),
            AttackVariant::Psi,
        )
        .unwrap();
        let text = strategy_to_json(&Strategy::SemiClassical(s.clone()));
        match strategy_from_json(&text).unwrap() {
            Strategy::SemiClassical(back) => {
                assert_eq!(back.table, s.table);
                assert!((back.alice_state.overlap_abs(&s.alice_state).unwrap() - 1.0).abs() < 1e-12);
            }
            _ => panic!("expected semi-classical strategy"),
        }
    }

    #[test]
    fn attack_shorthand_parses() {
        let text = r#"{
            "variant": "xor", "n": 2,
            "alice_state": {"attack": {"y": "10", "variant": "psi"}},
            "answer_table_hex": "6"
        }"#;
        match strategy_from_json(text).unwrap() {
            Strategy::SemiClassical(s) => {
                let want = attack_state(&BitString::parse("10").unwrap(), AttackVariant::Psi).unwrap();
                assert!((s.alice_state.overlap_abs(&want).unwrap() - 1.0).abs() < 1e-12);
            }
            _ => panic!("expected semi-classical strategy"),
        }
    }

    #[test]
    fn mixed_or_empty_files_are_rejected() {
        assert!(strategy_from_json(r#"{"variant":"xor","n":1}"#).is_err());
        let mixed = r#"{
            "variant": "xor", "n": 1,
            "alice_state": [[1.0,0.0],[0.0,0.0]],
            "answer_table_hex": "0",
            "dim_b": 1
        }"#;
        assert!(strategy_from_json(mixed).is_err());
    }
}
