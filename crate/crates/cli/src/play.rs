//! Interactive terminal play at a fixed 30 Hz tick, for debugging games by
//! hand. Each character cell shows two pixel rows using the upper half block.

use std::io::{self, IsTerminal, Write};
use std::time::{Duration, Instant};

use anyhow::{bail, Result};
use arcade_core::config::GameConfig;
use arcade_core::env::EnvInstance;
use arcade_core::render::{Frame, HEIGHT, WIDTH};
use arcade_core::sim::action::{DOWN, LEFT, NOOP, RIGHT, SHOOT, UP};
use arcade_core::sim::Action;
use crossterm::event::{self, Event, KeyCode, KeyEventKind};
use crossterm::style::{Color, Print, SetBackgroundColor, SetForegroundColor, ResetColor};
use crossterm::{cursor, execute, queue, terminal};

const TICK: Duration = Duration::from_micros(33_333);

/// Restores the terminal even when the loop exits with an error.
struct Screen;

impl Screen {
    fn enter() -> io::Result<Self> {
        terminal::enable_raw_mode()?;
        execute!(io::stdout(), terminal::EnterAlternateScreen, cursor::Hide)?;
        Ok(Screen)
    }
}

impl Drop for Screen {
    fn drop(&mut self) {
        let _ = execute!(io::stdout(), ResetColor, cursor::Show, terminal::LeaveAlternateScreen);
        let _ = terminal::disable_raw_mode();
    }
}

fn rgb(c: [u8; 3]) -> Color {
    Color::Rgb { r: c[0], g: c[1], b: c[2] }
}

fn draw(out: &mut impl Write, f: &Frame, status: &str) -> io::Result<()> {
    queue!(out, cursor::MoveTo(0, 0))?;
    for row in 0..HEIGHT / 2 {
        for x in 0..WIDTH {
            queue!(
                out,
                SetForegroundColor(rgb(f.get(x, 2 * row))),
                SetBackgroundColor(rgb(f.get(x, 2 * row + 1))),
                Print('▀')
            )?;
        }
        queue!(out, ResetColor, Print("\r\n"))?;
    }
    queue!(out, terminal::Clear(terminal::ClearType::CurrentLine), Print(status))?;
    out.flush()
}

enum Input {
    Act(u8),
    Restart,
    Quit,
}

/// Keys pressed during one tick; the last movement key wins.
fn read_input(deadline: Instant) -> io::Result<Option<Input>> {
    let mut got = None;
    loop {
        let left = deadline.saturating_duration_since(Instant::now());
        if !event::poll(left)? {
            return Ok(got);
        }
        if let Event::Key(k) = event::read()? {
            if k.kind == KeyEventKind::Release {
                continue;
            }
            got = Some(match k.code {
                KeyCode::Up => Input::Act(UP),
                KeyCode::Down => Input::Act(DOWN),
                KeyCode::Left => Input::Act(LEFT),
                KeyCode::Right => Input::Act(RIGHT),
                KeyCode::Char(' ') => Input::Act(SHOOT),
                KeyCode::Char('r') => Input::Restart,
                KeyCode::Char('q') | KeyCode::Esc => return Ok(Some(Input::Quit)),
                _ => continue,
            });
        }
    }
}

pub fn run(name: &str, cfg: GameConfig, seed: u64) -> Result<()> {
    if !io::stdout().is_terminal() {
        bail!("play needs an interactive terminal");
    }
    let mut env = EnvInstance::new(cfg, seed)?;
    env.set_render_mode(arcade_core::env::RenderMode::Window);
    let mut frame = env.reset(None)?;
    let mut status = format!("{name}: arrows move, space fires, r restarts, q quits");
    let _screen = Screen::enter()?;
    let mut out = io::stdout();
    let mut done = false;
    loop {
        draw(&mut out, &frame, &status)?;
        let deadline = Instant::now() + TICK;
        let action = match read_input(deadline)? {
            Some(Input::Quit) => return Ok(()),
            Some(Input::Restart) => {
                frame = env.reset(None)?;
                done = false;
                continue;
            }
            Some(Input::Act(a)) => a,
            None => NOOP,
        };
        if done {
            continue;
        }
        let r = env.step(Action::Discrete(action))?;
        frame = r.frame;
        status = format!("{name}  score {:>4}  step {:>5}  {}", r.info.score, r.info.step_count, r.info.status.name());
        if r.done {
            done = true;
            status.push_str("  (r restarts)");
        }
    }
}
