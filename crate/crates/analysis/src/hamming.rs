use crate::AnalysisError;

/// Number of differing bits between two equal-length byte strings.
pub fn hamming_distance(a: &[u8], b: &[u8]) -> Result<u32, AnalysisError> {
    if a.len() != b.len() {
        return Err(AnalysisError::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(a.iter().zip(b).map(|(x, y)| (x ^ y).count_ones()).sum())
}
