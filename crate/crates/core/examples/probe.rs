use ehrhart_local::corpus::polygon_corpus;
use ehrhart_local::domain::{DomainPolicy, GramMatrix};
use ehrhart_local::ehrhart::{interpolate_ehrhart, local_formula_coefficients};
use ehrhart_local::mu::MuTable;
use std::time::Instant;

fn main() {
    let polys = polygon_corpus(42, 10, 10, 8);
    for (i, p) in polys.iter().enumerate() {
        let t0 = Instant::now();
        let table = MuTable::build(p.clone(), DomainPolicy::Cube, 0).unwrap();
        let dt_cube = t0.elapsed();
        let t0 = Instant::now();
        let table_dv = MuTable::build(p.clone(), DomainPolicy::Dv(GramMatrix::identity()), 0).unwrap();
        let dt_dv = t0.elapsed();
        let oracle = interpolate_ehrhart(p).unwrap();
        let ok1 = local_formula_coefficients(&table) == oracle;
        let ok2 = local_formula_coefficients(&table_dv) == oracle;
        println!(
            "poly {} verts={} cube={:?} dv={:?} match={}/{} vsum={} pair_tests={}",
            i, p.num_verts(), dt_cube, dt_dv, ok1, ok2,
            table.vertex_sum(), table.cx.diag.pair_tests
        );
    }
}
