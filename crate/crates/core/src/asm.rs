//! Alternating sign matrices: validation, enumeration, statistics, corner
//! sums, and the compatibility relation between consecutive orders.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on enumeration order; override with `LAMDET_MAX_ASM_ORDER`.
const DEFAULT_MAX_ASM_ORDER: usize = 8;

pub fn max_asm_order() -> usize {
    std::env::var("LAMDET_MAX_ASM_ORDER")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_MAX_ASM_ORDER)
}

/// An alternating sign matrix with precomputed statistics.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Asm {
    n: usize,
    entries: Vec<i8>,
    n_minus: u32,
    n_plus: u32,
    inv: u32,
}

/// The statistics record of [`Asm::stats`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AsmStats {
    pub n_minus: u32,
    pub n_plus: u32,
    pub inv: u32,
    /// `Inv(B) - N_-(B)`, the exponent of the bias in the direct
    /// determinant formula.
    pub p_exp: u32,
}

/// Matrix of upper-left partial sums of an [`Asm`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerSum {
    n: usize,
    entries: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
struct AsmJson {
    n: usize,
    rows: Vec<Vec<i8>>,
}

impl Asm {
    /// Validates an integer grid as an alternating sign matrix.
    pub fn validate(rows: &[Vec<i64>]) -> Result<Asm> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::SizeMismatch(format!(
                "expected a nonempty square grid, got {n} rows"
            )));
        }
        let mut entries = vec![0i8; n * n];
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if !(-1..=1).contains(&v) {
                    return Err(Error::NotAlternating(format!("row {}", i + 1)));
                }
                entries[i * n + j] = v as i8;
            }
        }
        for i in 0..n {
            let sum: i32 = (0..n).map(|j| entries[i * n + j] as i32).sum();
            if sum != 1 {
                return Err(Error::BadRowSum(i + 1));
            }
        }
        for j in 0..n {
            let sum: i32 = (0..n).map(|i| entries[i * n + j] as i32).sum();
            if sum != 1 {
                return Err(Error::BadColSum(j + 1));
            }
        }
        // Alternation: partial sums along a line with unit sum stay in
        // {0,1} exactly when the nonzero entries alternate starting and
        // ending with +1.
        for i in 0..n {
            let mut sum = 0i32;
            for j in 0..n {
                sum += entries[i * n + j] as i32;
                if !(0..=1).contains(&sum) {
                    return Err(Error::NotAlternating(format!("row {}", i + 1)));
                }
            }
        }
        for j in 0..n {
            let mut sum = 0i32;
            for i in 0..n {
                sum += entries[i * n + j] as i32;
                if !(0..=1).contains(&sum) {
                    return Err(Error::NotAlternating(format!("column {}", j + 1)));
                }
            }
        }
        Ok(Asm::from_entries_unchecked(n, entries))
    }

    fn from_entries_unchecked(n: usize, entries: Vec<i8>) -> Asm {
        let mut n_minus = 0u32;
        let mut n_plus = 0u32;
        for &v in &entries {
            match v {
                1 => n_plus += 1,
                -1 => n_minus += 1,
                _ => {}
            }
        }
        // Inv(B) = sum_{k,l} b_{kl} ((k-1) - corner(k-1, l)).
        let mut corner_prev = vec![0i32; n + 1]; // corner sums of rows above
        let mut inv = 0i32;
        for k in 1..=n {
            for l in 1..=n {
                let b = entries[(k - 1) * n + (l - 1)] as i32;
                if b != 0 {
                    inv += b * ((k as i32 - 1) - corner_prev[l]);
                }
            }
            let mut row_acc = 0i32;
            for l in 1..=n {
                row_acc += entries[(k - 1) * n + (l - 1)] as i32;
                corner_prev[l] += row_acc;
            }
        }
        debug_assert!(inv >= 0);
        Asm {
            n,
            entries,
            n_minus,
            n_plus,
            inv: inv as u32,
        }
    }

    pub fn identity(n: usize) -> Asm {
        let mut entries = vec![0i8; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Asm::from_entries_unchecked(n, entries)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Entry at 1-based position.
    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn rows(&self) -> Vec<Vec<i8>> {
        (0..self.n)
            .map(|i| self.entries[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    pub fn stats(&self) -> AsmStats {
        AsmStats {
            n_minus: self.n_minus,
            n_plus: self.n_plus,
            inv: self.inv,
            p_exp: self.inv - self.n_minus,
        }
    }

    /// Independent count of `p_exp` following the zero-counting description:
    /// zeros whose first nonzero entry to the right and below are both `+1`.
    pub fn p_exp_by_zero_count(&self) -> u32 {
        let n = self.n;
        // next nonzero to the right / below; 0 = none
        let mut count = 0u32;
        for i in 0..n {
            for j in 0..n {
                if self.entries[i * n + j] != 0 {
                    continue;
                }
                let right = (j + 1..n)
                    .map(|jj| self.entries[i * n + jj])
                    .find(|&v| v != 0);
                let below = (i + 1..n)
                    .map(|ii| self.entries[ii * n + j])
                    .find(|&v| v != 0);
                if right == Some(1) && below == Some(1) {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn corner_sum(&self) -> CornerSum {
        let n = self.n;
        let mut entries = vec![0i32; n * n];
        for i in 0..n {
            let mut row_acc = 0i32;
            for j in 0..n {
                row_acc += self.entries[i * n + j] as i32;
                entries[i * n + j] = row_acc + if i > 0 { entries[(i - 1) * n + j] } else { 0 };
            }
        }
        CornerSum { n, entries }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&AsmJson {
            n: self.n,
            rows: self.rows(),
        })
        .expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Asm> {
        let parsed: AsmJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if parsed.rows.len() != parsed.n {
            return Err(Error::SizeMismatch("n does not match rows".into()));
        }
        let rows: Vec<Vec<i64>> = parsed
            .rows
            .iter()
            .map(|r| r.iter().map(|&v| v as i64).collect())
            .collect();
        Asm::validate(&rows)
    }

    /// Compact sign grid: `+` for 1, `-` for -1, `.` for 0.
    pub fn to_grid(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n {
            for j in 0..self.n {
                out.push(match self.entries[i * self.n + j] {
                    1 => '+',
                    -1 => '-',
                    _ => '.',
                });
            }
            out.push('\n');
        }
        out
    }
}

impl CornerSum {
    pub fn order(&self) -> usize {
        self.n
    }

    /// Entry at 1-based position; indices 0 are allowed and give 0.
    pub fn get(&self, i: usize, j: usize) -> i32 {
        if i == 0 || j == 0 {
            0
        } else {
            self.entries[(i - 1) * self.n + (j - 1)]
        }
    }

    /// Sum of all entries.
    pub fn total(&self) -> i64 {
        self.entries.iter().map(|&v| v as i64).sum()
    }

    pub fn from_entries(n: usize, entries: Vec<i32>) -> Result<CornerSum> {
        if entries.len() != n * n {
            return Err(Error::SizeMismatch("corner sum grid is not square".into()));
        }
        let c = CornerSum { n, entries };
        // Boundary and unit-step monotonicity.
        for i in 1..=n {
            if c.get(i, n) != i as i32 || c.get(n, i) != i as i32 {
                return Err(Error::NotACornerSum("last row/column must be 1..n".into()));
            }
            for j in 1..=n {
                let dr = c.get(i, j) - c.get(i - 1, j);
                let dc = c.get(i, j) - c.get(i, j - 1);
                if !(0..=1).contains(&dr) || !(0..=1).contains(&dc) {
                    return Err(Error::NotACornerSum(format!(
                        "non-unit step at ({i},{j})"
                    )));
                }
            }
        }
        Ok(c)
    }

    /// Recovers the alternating sign matrix whose corner sums these are.
    pub fn to_asm(&self) -> Result<Asm> {
        let n = self.n;
        let mut rows = vec![vec![0i64; n]; n];
        for i in 1..=n {
            for j in 1..=n {
                rows[i - 1][j - 1] = (self.get(i, j) - self.get(i, j - 1) - self.get(i - 1, j)
                    + self.get(i - 1, j - 1)) as i64;
            }
        }
        Asm::validate(&rows).map_err(|e| Error::NotACornerSum(e.to_string()))
    }
}

/// Direction for [`compatible_set`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Order `n-1` matrices compatible with an order-`n` matrix.
    Smaller,
    /// Order `n+1` matrices compatible with an order-`n` matrix.
    Larger,
}

/// Compatibility test on corner sums, for `b` of order `n+1` and `bp` of
/// order `n`.
pub fn compatible(b: &Asm, bp: &Asm) -> Result<bool> {
    if b.order() != bp.order() + 1 {
        return Err(Error::SizeMismatch(format!(
            "orders {} and {} do not differ by 1",
            b.order(),
            bp.order()
        )));
    }
    let n = bp.order();
    let cb = b.corner_sum();
    let cbp = bp.corner_sum();
    for i in 1..=n {
        for j in 1..=n {
            let lo = cb.get(i, j).max(cb.get(i + 1, j + 1) - 1);
            let hi = cb.get(i, j + 1).min(cb.get(i + 1, j));
            let v = cbp.get(i, j);
            if v < lo || v > hi {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The dual compatibility test: bounds on the corner sums of the larger
/// matrix in terms of those of the smaller one.
pub fn compatible_dual(b: &Asm, bp: &Asm) -> Result<bool> {
    if b.order() != bp.order() + 1 {
        return Err(Error::SizeMismatch(format!(
            "orders {} and {} do not differ by 1",
            b.order(),
            bp.order()
        )));
    }
    let n = bp.order();
    let cb = b.corner_sum();
    let cbp = bp.corner_sum();
    for i in 1..=n {
        for j in 1..=n {
            let lo = cbp.get(i, j - 1).max(cbp.get(i - 1, j));
            let hi = cbp.get(i, j).min(cbp.get(i - 1, j - 1) + 1);
            let v = cb.get(i, j);
            if v < lo || v > hi {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All matrices compatible with `fixed`, together with their corner-sum
/// offset `delta`. For `Smaller`, `delta = |C'| - |C'|_min` and the count is
/// `2^(N_-)`; for `Larger`, `delta = |C|_max - |C|` and the count is
/// `2^(N_+)`.
pub fn compatible_set(fixed: &Asm, direction: Direction) -> Vec<(Asm, u32)> {
    match direction {
        Direction::Smaller => compatible_smaller(fixed),
        Direction::Larger => compatible_larger(fixed),
    }
}

fn compatible_smaller(b: &Asm) -> Vec<(Asm, u32)> {
    let m = b.order();
    assert!(m >= 2, "no smaller compatible order exists for order 1");
    let n = m - 1;
    let cb = b.corner_sum();
    let mut base = vec![0i32; n * n];
    let mut free: Vec<usize> = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let lo = cb.get(i, j).max(cb.get(i + 1, j + 1) - 1);
            let hi = cb.get(i, j + 1).min(cb.get(i + 1, j));
            debug_assert!(lo == hi || lo + 1 == hi);
            base[(i - 1) * n + (j - 1)] = lo;
            if hi > lo {
                debug_assert_eq!(b.get(i + 1, j + 1), -1);
                free.push((i - 1) * n + (j - 1));
            }
        }
    }
    subsets_to_asms(n, &base, &free, 1)
}

fn compatible_larger(bp: &Asm) -> Vec<(Asm, u32)> {
    let n = bp.order();
    let m = n + 1;
    let cbp = bp.corner_sum();
    let mut base = vec![0i32; m * m];
    let mut free: Vec<usize> = Vec::new();
    for i in 1..=m {
        for j in 1..=m {
            if i == m || j == m {
                base[(i - 1) * m + (j - 1)] = if i == m { j as i32 } else { i as i32 };
                continue;
            }
            let lo = cbp.get(i, j - 1).max(cbp.get(i - 1, j));
            let hi = cbp.get(i, j).min(cbp.get(i - 1, j - 1) + 1);
            debug_assert!(lo == hi || lo + 1 == hi);
            base[(i - 1) * m + (j - 1)] = hi;
            if hi > lo {
                debug_assert_eq!(bp.get(i, j), 1);
                free.push((i - 1) * m + (j - 1));
            }
        }
    }
    subsets_to_asms(m, &base, &free, -1)
}

fn subsets_to_asms(n: usize, base: &[i32], free: &[usize], sign: i32) -> Vec<(Asm, u32)> {
    let mut out = Vec::with_capacity(1 << free.len());
    for mask in 0u32..(1u32 << free.len()) {
        let mut entries = base.to_vec();
        for (bit, &pos) in free.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                entries[pos] += sign;
            }
        }
        let c = CornerSum::from_entries(n, entries).expect("bounds construction is valid");
        let asm = c.to_asm().expect("bounds construction yields an ASM");
        out.push((asm, mask.count_ones()));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Streams every alternating sign matrix of order `n` in a deterministic
/// (lexicographic by partial-sum rows) order.
pub fn for_each_asm(n: usize, mut f: impl FnMut(&Asm)) -> Result<()> {
    let bound = max_asm_order();
    if n == 0 || n > bound {
        return Err(Error::SizeTooLarge(n, bound));
    }
    // Rows of column partial sums: row k lists the k columns whose partial
    // sum is 1 after k matrix rows (a monotone triangle).
    let mut rows: Vec<Vec<u8>> = Vec::with_capacity(n);
    descend(n, &mut rows, &mut f);
    Ok(())
}

fn descend(n: usize, rows: &mut Vec<Vec<u8>>, f: &mut impl FnMut(&Asm)) {
    let k = rows.len(); // building row k+1 (1-based), of length k+1
    if k == n {
        emit(n, rows, f);
        return;
    }
    let mut candidate = vec![0u8; k + 1];
    extend_row(n, rows, &mut candidate, 0, f);
}

fn extend_row(
    n: usize,
    rows: &mut Vec<Vec<u8>>,
    candidate: &mut Vec<u8>,
    idx: usize,
    f: &mut impl FnMut(&Asm),
) {
    let k = rows.len(); // previous row length
    if idx == candidate.len() {
        rows.push(candidate.clone());
        descend(n, rows, f);
        rows.pop();
        return;
    }
    let prev = rows.last();
    let lo = {
        let mut lo = if idx == 0 { 1 } else { candidate[idx - 1] + 1 };
        if idx > 0 {
            if let Some(p) = prev {
                lo = lo.max(p[idx - 1]);
            }
        }
        lo
    };
    let hi = {
        // interlacing upper bound from the previous row, and a
        // completability bound: entry j of row k+1 can be at most
        // j + (n - (k+1)).
        let mut hi = n as u8;
        if let Some(p) = prev {
            if idx < p.len() {
                hi = hi.min(p[idx]);
            }
        }
        hi.min((idx + 1 + n - (k + 1)) as u8)
    };
    for v in lo..=hi {
        candidate[idx] = v;
        extend_row(n, rows, candidate, idx + 1, f);
    }
}

fn emit(n: usize, rows: &[Vec<u8>], f: &mut impl FnMut(&Asm)) {
    let mut entries = vec![0i8; n * n];
    for i in 0..n {
        for &c in &rows[i] {
            entries[i * n + (c as usize - 1)] += 1;
        }
        if i > 0 {
            for &c in &rows[i - 1] {
                entries[i * n + (c as usize - 1)] -= 1;
            }
        }
    }
    let asm = Asm::from_entries_unchecked(n, entries);
    f(&asm);
}

/// Materializes [`for_each_asm`]; intended for small orders.
pub fn enumerate_asm(n: usize) -> Result<Vec<Asm>> {
    let mut out = Vec::new();
    for_each_asm(n, |a| out.push(a.clone()))?;
    Ok(out)
}

pub fn count_asm(n: usize) -> Result<u64> {
    let mut c = 0u64;
    for_each_asm(n, |_| c += 1)?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn central_minus(n3: ()) -> Asm {
        let _ = n3;
        Asm::validate(&[vec![0, 1, 0], vec![1, -1, 1], vec![0, 1, 0]]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(Asm::validate(&[vec![1, 0], vec![0, 1]]).is_ok());
        assert_eq!(
            Asm::validate(&[vec![1, 0], vec![1, 0]]),
            Err(Error::BadColSum(1))
        );
        assert!(matches!(
            Asm::validate(&[vec![1, -1], vec![0, 1]]).unwrap_err(),
            Error::BadRowSum(_) | Error::BadColSum(_)
        ));
        // unit sums but broken alternation (two +1 in a row without a -1)
        assert!(matches!(
            Asm::validate(&[
                vec![0, 1, 0, 0],
                vec![1, -1, 0, 1],
                vec![0, 1, 1, -1],
                vec![0, 0, 0, 1]
            ])
            .unwrap_err(),
            Error::NotAlternating(_)
        ));
        // alternation violated inside a row that still sums to 1
        assert!(Asm::validate(&[
            vec![0, 1, 0, 0],
            vec![1, -1, 0, 1],
            vec![0, 1, 0, 0],
            vec![0, 0, 1, 0]
        ])
        .is_ok());
    }

    #[test]
    fn counts_match_known_values() {
        assert_eq!(count_asm(1).unwrap(), 1);
        assert_eq!(count_asm(2).unwrap(), 2);
        assert_eq!(count_asm(3).unwrap(), 7);
        assert_eq!(count_asm(4).unwrap(), 42);
        assert_eq!(count_asm(5).unwrap(), 429);
        assert_eq!(count_asm(6).unwrap(), 7436);
        assert!(matches!(count_asm(99), Err(Error::SizeTooLarge(99, _))));
    }

    #[test]
    fn exactly_one_order3_asm_has_a_minus() {
        let with_minus: Vec<Asm> = enumerate_asm(3)
            .unwrap()
            .into_iter()
            .filter(|a| a.stats().n_minus > 0)
            .collect();
        assert_eq!(with_minus.len(), 1);
        assert_eq!(with_minus[0], central_minus(()));
    }

    #[test]
    fn statistics() {
        let id = Asm::identity(4);
        assert_eq!(
            id.stats(),
            AsmStats {
                n_minus: 0,
                n_plus: 4,
                inv: 0,
                p_exp: 0
            }
        );
        let c = central_minus(());
        let s = c.stats();
        assert_eq!(s.n_minus, 1);
        assert_eq!(s.p_exp, 1);
        // anti-identity of order 3
        let anti = Asm::validate(&[vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]).unwrap();
        assert_eq!(anti.stats().inv, 3);
    }

    #[test]
    fn p_exp_matches_zero_count_up_to_order_5() {
        for n in 1..=5 {
            for_each_asm(n, |a| {
                assert_eq!(a.stats().p_exp, a.p_exp_by_zero_count(), "{}", a.to_grid());
            })
            .unwrap();
        }
    }

    #[test]
    fn corner_sum_round_trip_and_weighted_sum_identity() {
        let id2 = Asm::identity(2);
        let c = id2.corner_sum();
        let grid: Vec<i32> = (1..=2)
            .flat_map(|i| (1..=2).map(|j| c.get(i, j)).collect::<Vec<_>>())
            .collect();
        assert_eq!(grid, vec![1, 1, 1, 2]);
        for n in 1..=4 {
            for_each_asm(n, |a| {
                let c = a.corner_sum();
                assert_eq!(&c.to_asm().unwrap(), a);
                // sum_{ij} i*j*b_ij = |corner sums|
                let weighted: i64 = (1..=n)
                    .flat_map(|i| (1..=n).map(move |j| (i, j)))
                    .map(|(i, j)| (i * j) as i64 * a.get(i, j) as i64)
                    .sum();
                assert_eq!(weighted, c.total());
            })
            .unwrap();
        }
    }

    #[test]
    fn compatibility_tests_agree() {
        for n in 1..=4 {
            let larger = enumerate_asm(n + 1).unwrap();
            let smaller = enumerate_asm(n).unwrap();
            for b in &larger {
                for bp in &smaller {
                    assert_eq!(
                        compatible(b, bp).unwrap(),
                        compatible_dual(b, bp).unwrap(),
                        "disagreement for\n{}\n{}",
                        b.to_grid(),
                        bp.to_grid()
                    );
                }
            }
        }
    }

    #[test]
    fn compatible_set_counts_and_deltas() {
        // permutation matrix: a unique smaller compatible matrix
        let id = Asm::identity(3);
        let set = compatible_set(&id, Direction::Smaller);
        assert_eq!(set.len(), 1);
        assert_eq!(set[0].1, 0);
        // the central-minus matrix: two, with deltas {0, 1}
        let c = central_minus(());
        let set = compatible_set(&c, Direction::Smaller);
        assert_eq!(set.len(), 2);
        let mut deltas: Vec<u32> = set.iter().map(|x| x.1).collect();
        deltas.sort();
        assert_eq!(deltas, vec![0, 1]);
        // each produced matrix is indeed compatible
        for (bp, _) in &set {
            assert!(compatible(&c, bp).unwrap());
        }
        // the identity pair of consecutive orders is compatible
        assert!(compatible(&Asm::identity(3), &Asm::identity(2)).unwrap());
        // sum over ASM_3 of 2^{N_-} = 8
        let total: u64 = enumerate_asm(3)
            .unwrap()
            .iter()
            .map(|b| compatible_set(b, Direction::Smaller).len() as u64)
            .sum();
        assert_eq!(total, 8);
    }

    #[test]
    fn compatible_set_larger_matches_brute_force() {
        for n in 1..=3 {
            let larger = enumerate_asm(n + 1).unwrap();
            for bp in enumerate_asm(n).unwrap() {
                let set = compatible_set(&bp, Direction::Larger);
                assert_eq!(set.len(), 1usize << bp.stats().n_plus);
                let brute: Vec<&Asm> = larger
                    .iter()
                    .filter(|b| compatible(b, &bp).unwrap())
                    .collect();
                assert_eq!(set.len(), brute.len());
                for (b, _) in &set {
                    assert!(compatible(b, &bp).unwrap());
                }
            }
        }
    }

    #[test]
    fn smaller_set_matches_brute_force_and_delta_binomials() {
        for n in 2..=4 {
            let smaller = enumerate_asm(n - 1).unwrap();
            for b in enumerate_asm(n).unwrap() {
                let set = compatible_set(&b, Direction::Smaller);
                let stats = b.stats();
                assert_eq!(set.len(), 1usize << stats.n_minus);
                let brute: Vec<&Asm> = smaller
                    .iter()
                    .filter(|bp| compatible(&b, bp).unwrap())
                    .collect();
                assert_eq!(brute.len(), set.len());
                // delta multiplicities are binomial
                let mut byk = vec![0u64; stats.n_minus as usize + 1];
                for (_, d) in &set {
                    byk[*d as usize] += 1;
                }
                for (k, &cnt) in byk.iter().enumerate() {
                    assert_eq!(cnt, binomial(stats.n_minus as u64, k as u64));
                }
            }
        }
    }

    fn binomial(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        let mut r = 1u64;
        for i in 0..k {
            r = r * (n - i) / (i + 1);
        }
        r
    }

    #[test]
    fn json_round_trip() {
        let c = central_minus(());
        let j = c.to_json();
        assert_eq!(Asm::from_json(&j).unwrap(), c);
    }
}
