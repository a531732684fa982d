//! Golden genus-3 data: table rows and the assembled polynomials, kept in
//! their LaTeX form and read through [`crate::latex`].

use crate::admissible::{parse_datum, AdmissibleDatum};
use crate::algebra::{BiGradedPoly, LPoly, QGradedPoly, Rational};
use crate::error::{Error, Result};
use crate::latex::{normalize_row, parse_poly, parse_rational};

pub const TABLE1_ROWS: [&str; 11] = [
    r"$(2;8)$&$L^5$&$L^5+3L^4+6L^3+6L^2+3L+1$&$\frac{1}{2}$\\[1pt]",
    r"$(3;4,1)$&$L^2$&$L^2+2L+1$&$\frac{5}{3}$\\[1pt]",
    r"$(3;1,4)$&$L^2$&$L^2+2L+1$&$\frac{7}{3}$\\[1pt]",
    r"$(4;4,0,0)$& $L$&$L+1$&$2$\\[1pt]",
    r"$(4;0,0,4)$ & $L$&$L+1$&$3$\\[1pt]",
    r"$(4;2,3,0)$ &$L^2-L$ &$L^2+2L+1$&$\frac{7}{4}$\\[1pt]",
    r"$(4;0,3,2)$ &$L^2-L$&$L^2+2L+1$&$\frac{9}{4}$\\[1pt]",
    r"$(4;2,0,2)$ &$L-1$&$L+1$&$\frac{5}{2}$\\[1pt]",
    r"$(6;1,0,2,0,1)$ &$L-1$ &$L+1$&$\frac{5}{2}$\\[1pt]",
    r"$(6;1,0,1,2,0)$&$L-1$ &$L+1$&$\frac{8}{3}$\\[1pt]",
    r"$(6;0,2,1,0,1)$&$L-1$ &$L+1$&$\frac{7}{3}$\\[1pt]",
];

pub const TABLE2_ROWS: [&str; 16] = [
    r"$(7;2,0,0,0,1,0)$ &$\frac{20}{7}$ & $(9;1,0,1,0,1,0,0,0)$ &$\frac{26}{9}$\\[1pt]",
    r"$(7;0,1,0,0,0,2)$ &$\frac{22}{7}$ & $(9;0,0,0,1,0,1,0,1)$ &$\frac{28}{9}$\\[1pt]",
    r"$(7;1,1,0,1,0,0)$ &$3$ & $(9;0,1,1,1,0,0,0,0)$ &$\frac{29}{9}$\\[1pt]",
    r"$(7;0,0,1,0,1,1)$ &$3$ & $(9;0,0,0,0,1,1,1,0)$ &$\frac{25}{9}$\\[1pt]",
    r"$(7;1,0,2,0,0,0)$ &$\frac{23}{7}$ & $(12;10100001000)$&$\frac{10}{3}$\\[1pt]",
    r"$(7;0,0,0,2,0,1)$ &$\frac{19}{7}$ & $(12;00010000101)$ &$\frac{8}{3}$\\[1pt]",
    r"$(7;0,2,1,0,0,0)$ &$\frac{24}{7}$ & $(12;10001100000)$ &$\frac{13}{4}$\\[1pt]",
    r"$(7;0,0,0,1,2,0)$ &$\frac{18}{7}$ & $(12;00000110001)$ &$\frac{11}{4}$\\[1pt]",
    r"$(8;2,0,0,0,0,1,0)$ &$\frac{13}{4}$ & $(12;00111000000)$ &$\frac{8}{3}$\\[1pt]",
    r"$(8;0,1,0,0,0,0,2)$ &$\frac{11}{4}$ & $(12;00000011100)$ &$\frac{10}{3}$\\[1pt]",
    r"$(8;1,1,0,0,1,0,0)$ &$3$ & $(14;1000011000000)$ &$\frac{51}{14}$\\[1pt]",
    r"$(8;0,0,1,0,0,1,1)$ &$3$ & $(14;0000001100001)$ &$\frac{33}{14}$\\[1pt]",
    r"$(8;0,1,2,0,0,0,0)$&$\frac{11}{4}$ & $(14;0100101000000)$ &$\frac{41}{14}$\\[1pt]",
    r"$(8;0,0,0,0,2,1,0)$ &$\frac{13}{4}$ & $(14;0000001010010)$ &$\frac{43}{14}$\\[1pt]",
    r"$(9;1,1,0,0,0,1,0,0)$ &$\frac{31}{9}$ & $(14;0011001000000)$ &$\frac{45}{14}$\\[1pt]",
    r"$(9;0,0,1,0,0,0,1,1)$ &$\frac{23}{9}$ & $(14;0000001001100)$&$\frac{39}{14}$\\[2pt]",
];

pub const OPEN_POLYNOMIAL: &str = r"1&+t+2t^2+t^3+t^{\frac{10}{3}}+t^{\frac{7}{2}}+4t^4+2 t^{\frac{9}{2}}+ 2 t^{\frac{14}{3}}+ t^{\frac{33}{7}}+ 5 t^5+ t^{\frac{46}{9}}+ t^{\frac{36}{7}} \\&+ 3t^{\frac{16}{3}}+ t^{\frac{38}{7}}+ 4 t^{\frac{11}{2}} + t^{\frac{50}{9}} + t^{\frac{39}{7}} +t^{\frac{17}{3}}+ t^{\frac{40}{7}}+ t^{\frac{52}{9}} + t^{\frac{41}{7}}+10 t^6 +t^{\frac{43}{7}}\\ &+ t^{\frac{56}{9}}+ t^{\frac{44}{7}}+ t^{\frac{19}{3}}+ t^{\frac{45}{7}}+ t^{\frac{58}{9}}+3 t^{\frac{13}{2}}+ t^{\frac{46}{7}}+ 2 t^{\frac{20}{3}}+ t^{\frac{48}{7}}+ t^{\frac{62}{9}}+ t^{\frac{51}{7}}.";

pub const COMPACTIFIED_POLYNOMIAL: &str = r"1& + t + 4 t^2 + 4 t^3 + t^{\frac{10}{3}} + t^{\frac{7}{2}} + 16 t^4 + t^{\frac{9}{2}} + 2 t^{\frac{14}{3}} + t^{\frac{33}{7}} + 12 t^5 \\&+ t^{\frac{46}{9}} + t^{\frac{36}{7}} + 5 t^{\frac{16}{3}} + t^{\frac{38}{7}} + 5 t^{\frac{11}{2}} + t^{\frac{50}{9}} + t^{\frac{39}{7}}  +t^{\frac{40}{7}} + t^{\frac{52}{9}} + t^{\frac{41}{7}}  \\&+ 31 t^6+ t^{\frac{43}{7}} + t^{\frac{56}{9}}+      t^{\frac{44}{7}} + t^{\frac{45}{7}} + t^{\frac{58}{9}} + 5 t^{\frac{13}{2}} +       t^{\frac{46}{7}} + 5t^{\frac{20}{3}} + t^{\frac{48}{7}} + t^{\frac{62}{9}} \\&+ 12 t^7 + t^{\frac{51}{7}} +2 t^{\frac{22}{3}} + t^{\frac{15}{2}} + 16 t^8 + t^{\frac{17}{2}} + t^{\frac{26}{3}} + 4t^9 + 4 t^{10} + t^{11} + t^{12}.";

pub const BIGRADED_POLYNOMIAL: &str = r"1&+ L^{1/2}t + 2 Lt^2 + L^{3/2}t^3 + (3L^2+L^{5/2})t^4\\ & + (2L^{5/2}+3L^3)t^5+(5L^3+2L^{7/2}+2L^4+L^6)t^6 \\ &+ \Lt{7/4}{7/2}(1+Lt) + \Lt{9/4}{9/2}(1+Lt) + 3\Lt{11/4}{11/2} + 3\Lt{13/4}{13/2} \\ &+ \Lt{5/3}{10/3} + \Lt{7/3}{14/3}(2+Lt)+ \Lt{8/3}{16/3}(3+Lt)+2\Lt{10/3}{20/3} \\ &+ \Lt{33/14}{33/7} + \Lt{18/7}{36/7}  + \Lt{19/7}{38/7}+ \Lt{39/14}{39/7} + \Lt{20/7}{40/7} \\ &+ \Lt{41/14}{41/7}+ \Lt{43/14}{43/7}  + \Lt{22/7}{44/7} + \Lt{45/14}{45/7}  + \Lt{23/7}{46/7} \\ & + \Lt{24/7}{48/7}+ \Lt{51/14}{51/7} + \Lt{23/9}{46/9}  + \Lt{25/9}{50/9} \\ & + \Lt{26/9}{52/9}  + \Lt{28/9}{56/9}  + \Lt{29/9}{58/9}  + \Lt{31/9}{62/9}.";

/// Total dimension of the orbifold cohomology of `M_3`.
pub const OPEN_TOTAL_DIM: u64 = 62;

#[derive(Clone, Debug, PartialEq)]
pub struct Table1Row {
    pub datum: AdmissibleDatum,
    pub chi_open: LPoly,
    pub chi_closed: LPoly,
    pub age: Rational,
}

fn cells(row: &str) -> Vec<String> {
    normalize_row(row)
        .split('&')
        .map(|c| c.trim_matches('$').to_string())
        .collect()
}

/// `(N;d_1,...)` with `g' = 0` implied.
pub fn datum_from_label(g: u32, label: &str) -> Result<AdmissibleDatum> {
    let inner = label
        .strip_prefix('(')
        .ok_or_else(|| Error::Parse(format!("bad label {label:?}")))?;
    parse_datum(g, &format!("(0,{inner}"))
}

pub fn table1() -> Result<Vec<Table1Row>> {
    TABLE1_ROWS
        .iter()
        .map(|row| {
            let c = cells(row);
            if c.len() != 4 {
                return Err(Error::Parse(format!("bad row {row:?}")));
            }
            Ok(Table1Row {
                datum: datum_from_label(3, &c[0])?,
                chi_open: parse_poly(&c[1])?.to_lpoly()?,
                chi_closed: parse_poly(&c[2])?.to_lpoly()?,
                age: parse_rational(&c[3])?,
            })
        })
        .collect()
}

/// Zero-dimensional sectors with their ages, left column first.
pub fn table2() -> Result<Vec<(AdmissibleDatum, Rational)>> {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for row in TABLE2_ROWS {
        let c = cells(row);
        if c.len() != 4 {
            return Err(Error::Parse(format!("bad row {row:?}")));
        }
        left.push((datum_from_label(3, &c[0])?, parse_rational(&c[1])?));
        right.push((datum_from_label(3, &c[2])?, parse_rational(&c[3])?));
    }
    left.extend(right);
    Ok(left)
}

pub fn open_polynomial() -> Result<QGradedPoly> {
    parse_poly(OPEN_POLYNOMIAL)?.to_qgraded()
}

pub fn compactified_polynomial() -> Result<QGradedPoly> {
    parse_poly(COMPACTIFIED_POLYNOMIAL)?.to_qgraded()
}

pub fn bigraded_polynomial() -> Result<BiGradedPoly> {
    parse_poly(BIGRADED_POLYNOMIAL)?.to_bigraded()
}
