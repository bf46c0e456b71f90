"""skel 실행 진입점 (.env 로드 후 CLI 실행)"""

import sys

from dotenv import load_dotenv

# Load environment variables (SKEL_LOG, SKEL_SEED, SKEL_VERIFY_BRUTE_LIMIT, SKEL_PARALLEL_WORKERS)
load_dotenv()

from src.skeleton.cli import main  # noqa: E402


if __name__ == "__main__":
  sys.exit(main())
