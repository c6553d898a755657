//! Koszul sign bookkeeping. Every sign in the crate that comes from moving
//! graded objects past each other is computed here.

/// `(-1)^n` as an integer coefficient.
#[inline]
pub fn pow_neg_one(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Sign picked up when the graded items with the given degrees are
/// rearranged so that position `k` of the result holds item `order[k]`.
pub fn koszul_sign(degrees: &[i64], order: &[usize]) -> i64 {
    debug_assert_eq!(degrees.len(), order.len());
    let mut parity = 0i64;
    for a in 0..order.len() {
        let da = degrees[order[a]];
        if da & 1 == 0 {
            continue;
        }
        for b in (a + 1)..order.len() {
            if order[a] > order[b] {
                parity += degrees[order[b]] & 1;
            }
        }
    }
    pow_neg_one(parity)
}

/// Sign for passing an item of degree `moving` across items whose total
/// degree is `passed`.
#[inline]
pub fn pass(moving: i64, passed: i64) -> i64 {
    pow_neg_one(moving * passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_two_odd_items() {
        assert_eq!(koszul_sign(&[1, 1], &[1, 0]), -1);
        assert_eq!(koszul_sign(&[1, 2], &[1, 0]), 1);
        assert_eq!(koszul_sign(&[3, 5, 2], &[0, 1, 2]), 1);
    }

    #[test]
    fn cyclic_rotation() {
        // moving the last odd item to the front past two odd items
        assert_eq!(koszul_sign(&[1, 1, 1], &[2, 0, 1]), 1);
        assert_eq!(koszul_sign(&[1, 2, 1], &[2, 0, 1]), -1);
    }
}
