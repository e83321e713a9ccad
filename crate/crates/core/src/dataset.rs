use crate::error::Result;
use crate::matrix::{DenseMatrix, SYMMETRY_TOL};
use crate::pairs::PairSample;

/// What is known about one side of the pairs: either explicit feature vectors
/// (objects x features) or a precomputed object-object kernel matrix.
#[derive(Debug, Clone)]
pub enum SideData {
    Features(DenseMatrix),
    PrecomputedKernel(DenseMatrix),
}

impl SideData {
    pub fn object_count(&self) -> usize {
        match self {
            SideData::Features(m) | SideData::PrecomputedKernel(m) => m.rows(),
        }
    }
}

/// A labeled pair sample together with the side data of both object tables.
/// `target_side == None` marks a homogeneous dataset: both pair slots index
/// the drug-side table.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub pairs: PairSample,
    pub drug_side: SideData,
    pub target_side: Option<SideData>,
}

impl Dataset {
    pub fn is_homogeneous(&self) -> bool {
        self.target_side.is_none()
    }

    pub fn drug_count(&self) -> usize {
        self.drug_side.object_count()
    }

    pub fn target_count(&self) -> usize {
        match &self.target_side {
            Some(s) => s.object_count(),
            None => self.drug_side.object_count(),
        }
    }
}

/// Outcome of `validate_dataset`: a list of violations, empty when valid.
#[derive(Debug, Default, Clone)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_side(report: &mut ValidationReport, side: &SideData, label: &str) {
    if let SideData::PrecomputedKernel(k) = side {
        if k.rows() != k.cols() {
            report.violations.push(format!(
                "{label}: precomputed kernel is not square ({}x{})",
                k.rows(),
                k.cols()
            ));
        } else if let Some((i, j)) = k.symmetry_violation(SYMMETRY_TOL) {
            report
                .violations
                .push(format!("{label}: asymmetric kernel at ({i},{j})"));
        }
    }
}

/// Report-only consistency check: id bounds, label shape, precomputed kernel
/// squareness and symmetry, and agreement between the pair sample's
/// homogeneity flag and the side data layout.
pub fn validate_dataset(ds: &Dataset) -> ValidationReport {
    let mut report = ValidationReport::default();

    let m = ds.drug_count();
    let q = ds.target_count();
    for (i, &d) in ds.pairs.first_ids().iter().enumerate() {
        if d >= m {
            report
                .violations
                .push(format!("pair {i}: drug id {d} out of range (m={m})"));
        }
    }
    for (i, &t) in ds.pairs.second_ids().iter().enumerate() {
        if t >= q {
            report
                .violations
                .push(format!("pair {i}: target id {t} out of range (q={q})"));
        }
    }
    match ds.pairs.labels() {
        Some(y) if y.len() != ds.pairs.len() => report.violations.push(format!(
            "label length {} does not match pair count {}",
            y.len(),
            ds.pairs.len()
        )),
        None => report.violations.push("labels missing".to_string()),
        _ => {}
    }
    if ds.pairs.is_homogeneous() != ds.is_homogeneous() {
        report
            .violations
            .push("pair sample homogeneity flag disagrees with side data layout".to_string());
    }
    check_side(&mut report, &ds.drug_side, "drug side");
    if let Some(t) = &ds.target_side {
        check_side(&mut report, t, "target side");
    }
    report
}

/// Dense labels accessor that errors instead of panicking.
pub fn require_labels<'a>(sample: &'a PairSample, context: &'static str) -> Result<&'a [f64]> {
    sample
        .labels()
        .ok_or(crate::error::Error::MissingLabels(context))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_by_two() -> Dataset {
        let pairs = PairSample::new(
            vec![0, 1, 0],
            vec![0, 1, 1],
            Some(vec![1.0, 0.0, 1.0]),
            false,
        )
        .unwrap();
        Dataset {
            pairs,
            drug_side: SideData::Features(DenseMatrix::new(2, 1, vec![1.0, 2.0]).unwrap()),
            target_side: Some(SideData::Features(
                DenseMatrix::new(2, 1, vec![3.0, 4.0]).unwrap(),
            )),
        }
    }

    #[test]
    fn well_formed_dataset_passes() {
        assert!(validate_dataset(&two_by_two()).is_ok());
    }

    #[test]
    fn out_of_range_id_reported() {
        let mut ds = two_by_two();
        ds.pairs = PairSample::new(vec![2, 0], vec![0, 0], Some(vec![1.0, 0.0]), false).unwrap();
        let report = validate_dataset(&ds);
        assert!(report
            .violations
            .iter()
            .any(|v| v.contains("drug id 2 out of range")));
    }

    #[test]
    fn asymmetric_precomputed_kernel_reported() {
        let k = DenseMatrix::new(3, 3, vec![1.0, 1.0, 0.0, 2.0, 1.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        let ds = Dataset {
            pairs: PairSample::new(vec![0], vec![0], Some(vec![1.0]), true).unwrap(),
            drug_side: SideData::PrecomputedKernel(k),
            target_side: None,
        };
        let report = validate_dataset(&ds);
        assert!(report
            .violations
            .iter()
            .any(|v| v.contains("asymmetric kernel")));
    }
}
