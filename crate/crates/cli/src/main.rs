use clap::{Parser, Subcommand};
use zos::geom::Point;
use zos_cli::{cmd_build, cmd_frechet, cmd_oracle, cmd_query, CliError, Method, QueryArgs};

/// Approximate shortest paths among convex zero-cost regions and obstacles.
#[derive(Parser)]
#[command(name = "zos", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the query structure and print its size.
    Build {
        scene: String,
        /// Write a JSON summary here.
        #[arg(long)]
        out: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Override the scene's epsilon.
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Approximate shortest path from (sx, sy) to (tx, ty).
    Query {
        scene: String,
        #[arg(allow_negative_numbers = true)]
        sx: f64,
        #[arg(allow_negative_numbers = true)]
        sy: f64,
        #[arg(allow_negative_numbers = true)]
        tx: f64,
        #[arg(allow_negative_numbers = true)]
        ty: f64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        epsilon: Option<f64>,
        /// Draw the scene and path here.
        #[arg(long)]
        svg: Option<String>,
        /// Write the result here instead of stdout.
        #[arg(long)]
        out: Option<String>,
    },
    /// Minimum exposure between two curves at threshold d.
    Frechet {
        curve_a: String,
        curve_b: String,
        #[arg(long)]
        d: f64,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
    },
    /// Reference shortest path.
    Oracle {
        scene: String,
        #[arg(allow_negative_numbers = true)]
        sx: f64,
        #[arg(allow_negative_numbers = true)]
        sy: f64,
        #[arg(allow_negative_numbers = true)]
        tx: f64,
        #[arg(allow_negative_numbers = true)]
        ty: f64,
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
        #[arg(long = "K", default_value_t = 200)]
        k: usize,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let out = match cli.command {
        Command::Build { scene, out, seed, epsilon } => cmd_build(&scene, out.as_deref(), seed, epsilon)?,
        Command::Query { scene, sx, sy, tx, ty, seed, epsilon, svg, out } => {
            let text = cmd_query(&QueryArgs {
                scene: &scene,
                s: Point::new(sx, sy),
                t: Point::new(tx, ty),
                seed: seed.unwrap_or(0),
                epsilon,
                svg: svg.as_deref(),
            })?;
            match out {
                Some(path) => {
                    std::fs::write(&path, text).map_err(|e| CliError::Internal(format!("{path}: {e}")))?;
                    String::new()
                }
                None => text,
            }
        }
        Command::Frechet { curve_a, curve_b, d, epsilon } => cmd_frechet(&curve_a, &curve_b, d, epsilon)?,
        Command::Oracle { scene, sx, sy, tx, ty, method, k } => {
            cmd_oracle(&scene, Point::new(sx, sy), Point::new(tx, ty), method, k)?
        }
    };
    print!("{out}");
    Ok(())
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter("ZOS_LOG")).init();
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        log::debug!("exit {}", e.exit_code());
        eprintln!("zos: {e}");
        std::process::exit(e.exit_code());
    }
}
