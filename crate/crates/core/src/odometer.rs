/// Steps a mixed-radix counter, last digit fastest. Returns `false` after
/// the final combination (the digits wrap back to zero).
pub(crate) fn advance(digits: &mut [usize], radices: &[usize]) -> bool {
    for pos in (0..digits.len()).rev() {
        digits[pos] += 1;
        if digits[pos] < radices[pos] {
            return true;
        }
        digits[pos] = 0;
    }
    false
}
