//! Status table of the dual pairs whose full theta correspondence is
//! explicitly known in the literature. This is static reference data:
//! nothing here is computed, and each entry quotes its citation.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub family: &'static str,
    pub condition: &'static str,
    pub status: &'static str,
    pub citation: &'static str,
}

pub fn catalog() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            family: "type II dual pairs",
            condition: "all",
            status: "Moeglin (real), Adams-Barbasch (complex), Li-Paul-Tan-Zhu (quaternion)",
            citation: "Dual pairs of type II: complete correspondence is given by Moeglin [Mo] \
                       (over the real), Adams-Barbasch [AB1] (over the complex) and \
                       Li-Paul-Tan-Zhu [LPTZ] (over the quaternion).",
        },
        CatalogEntry {
            family: "complex dual pairs of type I",
            condition: "all",
            status: "Adams-Barbasch",
            citation: "Complex dual pairs of type I: complete correspondence is given by \
                       Adams-Barbasch [AB1].",
        },
        CatalogEntry {
            family: "(O(p,q), Sp(2n,R))",
            condition: "(almost) equal rank: p+q = 2n, 2n+2, or 2n+1",
            status: "Moeglin and Paul (p+q = 2n, 2n+2); Adams-Barbasch (p+q = 2n+1)",
            citation: "The dual pair (O(p,q), Sp(2n,R)) in the so-called \"(almost) equal \
                       rank\" case: complete correspondence is given by Moeglin and Paul \
                       [Mo, Pa2] (for p+q=2n, 2n+2), and Adams-Barbasch [AB2] (for p+q=2n+1).",
        },
        CatalogEntry {
            family: "(U(p,q), U(r,s))",
            condition: "equal rank: p+q = r+s",
            status: "Paul [Pa1], where p+q=r+s",
            citation: "The dual pair (U(p,q), U(r,s)) in the \"equal rank\" case: complete \
                       correspondence is given by Paul [Pa1], where p+q=r+s.",
        },
        CatalogEntry {
            family: "(Sp(p,q), O*(2n))",
            condition: "equal rank and beyond: p+q <= n",
            status: "Li-Paul-Tan-Zhu [LPTZ], where p+q <= n",
            citation: "The dual pair (Sp(p,q), O*(2n)) in the \"equal rank\" case and beyond: \
                       complete correspondence is given by Li-Paul-Tan-Zhu [LPTZ], where p+q<=n.",
        },
        CatalogEntry {
            family: "(O(2,2), Sp(4,R))",
            condition: "this single pair",
            status: "Przebinda [Pr]",
            citation: "Other cases: complete correspondence is given by Przebinda [Pr] for the \
                       dual pair (O(2,2), Sp(4,R)).",
        },
        CatalogEntry {
            family: "(Sp(p,q), O*(4))",
            condition: "any (p,q)",
            status: "Bao [Ba]",
            citation: "Other cases: complete correspondence is given by Bao [Ba] for the dual \
                       pair (Sp(p,q), O*(4)).",
        },
        CatalogEntry {
            family: "(O(p,q), Sp(2n,R))",
            condition: "p+q = 4",
            status: "Fan [Fa]",
            citation: "Other cases: complete correspondence is given by Fan [Fa] for the dual \
                       pair (O(p,q), Sp(2n,R)) (where p+q=4).",
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_has_eight_cited_rows() {
        let rows = catalog();
        assert_eq!(rows.len(), 8);
        for row in &rows {
            assert!(!row.citation.is_empty() && !row.family.is_empty());
        }
        assert!(rows[3].status.contains("Paul [Pa1], where p+q=r+s"));
        assert!(rows[0]
            .status
            .contains("Moeglin (real), Adams-Barbasch (complex), Li-Paul-Tan-Zhu (quaternion)"));
        assert!(rows[5].status.contains("Przebinda [Pr]"));
    }
}
