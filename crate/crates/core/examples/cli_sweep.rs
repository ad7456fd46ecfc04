// Driving the command-line front end from code.

pub fn run() -> adsvol::Result<()> {
    let surface = r#"{"genus":2,"lengths":[1,1,1],"twists":[0,0,0]}"#;
    let calls: [&[&str]; 4] = [
        &["adsvol", "surface", "--surface", surface],
        &["adsvol", "riera", "e0", "--radius", "3", "--json", "--surface", surface],
        &["adsvol", "reproduce", "genus-optimality"],
        &["adsvol", "sweep", "random", "--samples", "3", "--seed", "11"],
    ];
    for args in calls {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = adsvol::cli::run(args.iter().copied(), &mut out, &mut err);
        println!("$ {}  -> exit {code}", args[1..].join(" "));
        print!("{}{}", String::from_utf8_lossy(&out), String::from_utf8_lossy(&err));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> adsvol::Result<()> {
    run()
}
