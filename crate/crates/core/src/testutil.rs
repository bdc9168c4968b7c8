use crate::model::{Curve, FunctionalSample, TimeGrid};

pub(crate) const WORKED_CSV: &str = "\
,f_0,f_1,f_2,f_3,f_4,f_5
x_0,1,2,3,6.0,9,8
x_1,2,4,4,7.0,9,8
x_2,3,5,4,6.5,12,10
x_3,2,6,2,6.0,11,10
x_4,1,2,1,7.0,11,9
";

pub(crate) fn worked_csv() -> &'static str {
    WORKED_CSV
}

/// Six curves on five grid points with hand-checkable band depths.
pub(crate) fn worked_sample() -> FunctionalSample {
    let cols: [(&str, [f64; 5]); 6] = [
        ("f_0", [1.0, 2.0, 3.0, 2.0, 1.0]),
        ("f_1", [2.0, 4.0, 5.0, 6.0, 2.0]),
        ("f_2", [3.0, 4.0, 4.0, 2.0, 1.0]),
        ("f_3", [6.0, 7.0, 6.5, 6.0, 7.0]),
        ("f_4", [9.0, 9.0, 12.0, 11.0, 11.0]),
        ("f_5", [8.0, 8.0, 10.0, 10.0, 9.0]),
    ];
    FunctionalSample::univariate(
        TimeGrid::uniform(5),
        cols.iter()
            .map(|(id, v)| Curve::new(*id, v.to_vec()))
            .collect(),
    )
}
