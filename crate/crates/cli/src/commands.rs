use std::fmt::Write as _;

use pangenome_lcs::chain::solve_chain_with;
use pangenome_lcs::dag::{parse_dag_tsv, verify_recurrence, MatchDag};
use pangenome_lcs::gap::{build_h_gap, solve_fglcs_sg_with};
use pangenome_lcs::generate::generate_instance;
use pangenome_lcs::graph::{CharDistMatrix, CharGraph};
use pangenome_lcs::lcs::{build_h, solve_lcs_sg_with, HNode};
use pangenome_lcs::report::{
    AlignmentReport, ChainReport, PathReport, ScoreReport, SeedListReport,
};
use pangenome_lcs::chain::write_seeds;
use pangenome_lcs::{
    longest_path_edge, longest_path_vertex, GapLimit, GapParams, Objective, Oracle,
    OracleBudget, Profile, ReachMatrix, Weighting,
};
use rayon::prelude::*;

pub(crate) use crate::input::Ctx;
use crate::input::{load_graph, load_queries, load_seeds, load_single_query};
use crate::{
    render, ChainArgs, CliError, DumpArgs, DumpWhat, GenArgs, LcsArgs, LpArgs, MemsArgs,
    ModeArg, ObjectiveArg, OracleArgs, ProblemArg,
};

fn invalid(what: &str, e: String) -> CliError {
    CliError::Input(format!("{what} failed validation: {e}"))
}

pub(crate) fn check_oracle(what: &str, solver: usize, oracle: usize) -> Result<(), CliError> {
    if solver == oracle {
        Ok(())
    } else {
        Err(CliError::Mismatch(format!(
            "{what}: solver score {solver}, oracle score {oracle}"
        )))
    }
}

/// `lcs`, and `fglcs` when `gap` is given.
pub fn lcs(
    ctx: &mut Ctx,
    args: LcsArgs,
    gap: Option<(GapLimit, GapLimit)>,
) -> Result<String, CliError> {
    let loaded = load_graph(ctx, &args.graph)?;
    let queries = load_queries(ctx, &args.query, &loaded)?;
    let g = &loaded.graph;
    let k = gap.map(|(k1, k2)| GapParams::new(k1, k2));
    let r = ReachMatrix::new(g);
    let cd = k.map(|_| CharDistMatrix::new(&CharGraph::new(g)));
    let (mode, color) = (args.out.mode(), ctx.color);
    let oracle = args.oracle_check.then(Oracle::default);

    let solve = |(idx, q): (usize, &Vec<u8>)| -> Result<String, CliError> {
        let label = format!("query {}", idx + 1);
        let rep = match (k, &cd) {
            (Some(k), Some(cd)) => {
                let a = solve_fglcs_sg_with(q, g, k, cd)?;
                a.validate(q, g, k, &r, cd).map_err(|e| invalid("alignment", e))?;
                if let Some(o) = oracle {
                    check_oracle(&label, a.alignment.score, o.fglcs(q, g, k)?)?;
                }
                AlignmentReport::fglcs(&a, g)
            }
            _ => {
                let a = solve_lcs_sg_with(q, g, &r);
                a.validate(q, g, &r).map_err(|e| invalid("alignment", e))?;
                if let Some(o) = oracle {
                    check_oracle(&label, a.score, o.lcs_sg(q, g)?)?;
                }
                AlignmentReport::lcs(&a, g)
            }
        };
        Ok(render::alignment(&rep, mode, color))
    };

    let results: Vec<Result<String, CliError>> = if args.jobs > 1 && queries.len() > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(args.jobs.into())
            .build()
            .map_err(|e| CliError::Input(format!("thread pool: {e}")))?;
        // Indexed collect keeps input order.
        pool.install(|| queries.par_iter().enumerate().map(solve).collect())
    } else {
        queries.iter().enumerate().map(solve).collect()
    };
    Ok(results.into_iter().collect::<Result<Vec<_>, _>>()?.concat())
}

pub fn chain(ctx: &mut Ctx, args: ChainArgs) -> Result<String, CliError> {
    let loaded = load_graph(ctx, &args.graph)?;
    let ms = load_seeds(ctx, args.seeds.as_deref(), &loaded)?;
    let g = &loaded.graph;
    let q = match &args.query {
        Some(q) => Some(q.as_bytes().to_vec()),
        None => loaded.query.clone(),
    };
    ms.validate(g, q.as_deref())?;
    let objective = match args.objective {
        ObjectiveArg::Len => Objective::Length,
        ObjectiveArg::Count => Objective::Count,
    };
    let r = ReachMatrix::new(g);
    let c = solve_chain_with(&ms, g, &r, objective)?;
    c.validate(&r).map_err(|e| invalid("chain", e))?;
    if args.oracle_check {
        let o = Oracle::default();
        let want = match objective {
            Objective::Length => o.memc(&ms, g)?,
            Objective::Count => o.msp(&ms, g)?,
        };
        check_oracle("chain", c.score(), want)?;
    }
    Ok(render::chain(&ChainReport::new(&c, g), args.out.mode(), ctx.color))
}

pub fn lp(ctx: &mut Ctx, args: LpArgs) -> Result<String, CliError> {
    let dag = parse_dag_tsv(&ctx.read_text(&args.dag)?)?;
    let mode = match args.mode {
        ModeArg::Edge => Weighting::Edge,
        ModeArg::Vertex => Weighting::Vertex,
    };
    let res = match mode {
        Weighting::Edge => longest_path_edge(&dag)?,
        Weighting::Vertex => longest_path_vertex(&dag)?,
    };
    verify_recurrence(&dag, &res, mode).map_err(|e| invalid("longest path", e))?;
    Ok(render::path(&PathReport::new(&res, mode), args.out.mode(), ctx.color))
}

pub fn oracle(ctx: &mut Ctx, args: OracleArgs) -> Result<String, CliError> {
    let loaded = load_graph(ctx, &args.graph)?;
    let g = &loaded.graph;
    let o = Oracle::default();
    let (problem, score) = match args.problem {
        ProblemArg::Lcs => ("lcs-sg", o.lcs_sg(&load_single_query(ctx, &args.query, &loaded)?, g)?),
        ProblemArg::Fglcs => {
            let (Some(k1), Some(k2)) = (args.k1, args.k2) else {
                return Err(CliError::Usage("fglcs needs --k1 and --k2".into()));
            };
            let q = load_single_query(ctx, &args.query, &loaded)?;
            ("fglcs-sg", o.fglcs(&q, g, GapParams::new(k1, k2))?)
        }
        ProblemArg::Memc => ("memc", o.memc(&load_seeds(ctx, args.seeds.as_deref(), &loaded)?, g)?),
        ProblemArg::Msp => ("msp", o.msp(&load_seeds(ctx, args.seeds.as_deref(), &loaded)?, g)?),
    };
    let rep = ScoreReport {
        problem: problem.into(),
        score,
    };
    Ok(render::score(&rep, args.out.mode()))
}

pub fn gen(ctx: &mut Ctx, args: GenArgs) -> Result<String, CliError> {
    let d = Profile::default();
    let profile = Profile {
        vertices: args.vertices.unwrap_or(d.vertices),
        total_len: args.total_len.unwrap_or(d.total_len),
        alphabet: args.alphabet.unwrap_or(d.alphabet),
        query_len: args.query_len.unwrap_or(d.query_len),
        acyclic: !args.cyclic,
        edge_prob: args.edge_prob.unwrap_or(d.edge_prob),
        max_seeds: args.max_seeds.unwrap_or(d.max_seeds),
    };
    if !profile.fits(&OracleBudget::default()) {
        ctx.warn("warning: profile exceeds the default oracle budget; --oracle-check will refuse it");
    }
    Ok(generate_instance(args.seed, &profile)?.to_bundle())
}

pub fn mems(ctx: &mut Ctx, args: MemsArgs) -> Result<String, CliError> {
    let loaded = load_graph(ctx, &args.graph)?;
    let q = load_single_query(ctx, &args.query, &loaded)?;
    let g = &loaded.graph;
    let ms = Oracle::new(OracleBudget::unlimited()).enumerate_mems(&q, g)?;
    ms.validate(g, Some(&q))?;
    Ok(render::seeds(&SeedListReport::mems(&ms, g), &write_seeds(&ms, g), args.out.mode()))
}

fn write_h(dag: &MatchDag<HNode>, g: &pangenome_lcs::PangenomeGraph) -> String {
    let mut s = String::new();
    for (idx, n) in dag.payloads().iter().enumerate() {
        writeln!(s, "# {idx}: Q[{}] = {}[{}]", n.i, g.id(n.vertex), n.offset).unwrap();
    }
    for idx in 0..dag.node_count() {
        writeln!(s, "N\t{idx}\t{}", dag.weight(idx)).unwrap();
    }
    for (a, b) in dag.arcs() {
        writeln!(s, "A\t{a}\t{b}").unwrap();
    }
    s
}

pub fn dump(ctx: &mut Ctx, args: DumpArgs) -> Result<String, CliError> {
    let loaded = load_graph(ctx, &args.graph)?;
    let g = &loaded.graph;
    let mut s = String::new();
    match args.what {
        DumpWhat::Reach => {
            let r = ReachMatrix::new(g);
            for u in 0..g.vertex_count() {
                for v in (0..g.vertex_count()).filter(|&v| r.reaches(u, v)) {
                    writeln!(s, "{}\t{}", g.id(u), g.id(v)).unwrap();
                }
            }
        }
        DumpWhat::Chars => {
            let cg = CharGraph::new(g);
            let cd = CharDistMatrix::new(&cg);
            let nodes = cg.nodes();
            for (a, na) in nodes.iter().enumerate() {
                for (b, nb) in nodes.iter().enumerate() {
                    if let (true, Some(d)) = (a != b, cd.get(a, b)) {
                        writeln!(
                            s,
                            "{}\t{}\t{}\t{}\t{d}",
                            g.id(na.vertex),
                            na.offset,
                            g.id(nb.vertex),
                            nb.offset
                        )
                        .unwrap();
                    }
                }
            }
        }
        DumpWhat::H => {
            let q = load_single_query(ctx, &args.query, &loaded)?;
            s = write_h(&build_h(&q, g, &ReachMatrix::new(g)), g);
        }
        DumpWhat::Hgap => {
            let q = load_single_query(ctx, &args.query, &loaded)?;
            let (Some(k1), Some(k2)) = (args.k1, args.k2) else {
                return Err(CliError::Usage("hgap needs --k1 and --k2".into()));
            };
            let cd = CharDistMatrix::new(&CharGraph::new(g));
            s = write_h(&build_h_gap(&q, g, GapParams::new(k1, k2), &cd)?, g);
        }
    }
    Ok(s)
}
