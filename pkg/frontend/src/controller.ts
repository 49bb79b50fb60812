// UI state machine. The server is authoritative: every mutation refetches
// before re-rendering, so the view can never drift from the session.

import { ApiError, ReviewApi } from "./api.js";
import type { ChatPayload, ChatSummary, Receipt } from "./api.js";
import {
  chatDetailView,
  chatListView,
  errorBanner,
  noticeBanner,
  previewView,
} from "./views.js";

export type Route = "list" | "detail" | "preview";

export class ReviewController {
  route: Route = "list";
  chats: ChatSummary[] = [];
  detail: ChatPayload | null = null;
  previewText: string | null = null;
  receipt: Receipt | null = null;
  error: string | null = null;
  errorRetryAction: string | null = null;
  notice: string | null = null;
  pendingDelete: number | null = null;
  researcherChecked = true;
  busy = false;

  constructor(private readonly api: ReviewApi) {}

  private clearMessages(): void {
    this.error = null;
    this.errorRetryAction = null;
    this.notice = null;
  }

  private showError(err: unknown, retryAction: string | null = null): void {
    this.error = err instanceof Error ? err.message : String(err);
    this.errorRetryAction = retryAction;
  }

  async refreshList(): Promise<void> {
    try {
      this.chats = await this.api.listChats();
      if (this.errorRetryAction === "refresh") {
        // Only clear the banner this method produced; inline errors from
        // other actions must survive the resync.
        this.error = null;
        this.errorRetryAction = null;
      }
    } catch (err) {
      this.showError(err, "refresh");
    }
  }

  goToList(): void {
    this.route = "list";
    this.detail = null;
    this.previewText = null;
    this.receipt = null;
    this.pendingDelete = null;
    this.clearMessages();
  }

  async openChat(chatId: string): Promise<void> {
    this.clearMessages();
    this.pendingDelete = null;
    try {
      this.detail = await this.api.getChat(chatId);
      this.route = "detail";
    } catch (err) {
      this.showError(err);
      this.route = "list";
    }
    await this.refreshList();
  }

  requestDelete(index: number): void {
    this.pendingDelete = index;
  }

  cancelDelete(): void {
    this.pendingDelete = null;
  }

  async confirmDelete(index: number): Promise<void> {
    if (!this.detail) return;
    const chatId = this.detail.chat_id;
    this.pendingDelete = null;
    try {
      await this.api.deleteUrl(chatId, index);
    } catch (err) {
      if (err instanceof ApiError) {
        this.showError(err);
      } else {
        this.showError(err, "refresh");
      }
    }
    // Success or failure, resync with the server's current state.
    try {
      this.detail = await this.api.getChat(chatId);
    } catch (err) {
      this.showError(err, "refresh");
    }
    await this.refreshList();
  }

  async openPreview(chatId: string): Promise<void> {
    this.clearMessages();
    try {
      this.previewText = await this.api.previewText(chatId);
      this.receipt = null;
      this.route = "preview";
    } catch (err) {
      this.showError(err);
    }
  }

  toggleResearcher(checked: boolean): void {
    this.researcherChecked = checked;
  }

  /** Submission needs an explicitly selected target and an idle client. */
  get canSubmit(): boolean {
    return this.researcherChecked && !this.busy && this.receipt === null;
  }

  async submitChat(chatId: string): Promise<void> {
    if (!this.canSubmit) {
      return;
    }
    this.busy = true;
    this.clearMessages();
    try {
      this.receipt = await this.api.submit(chatId);
    } catch (err) {
      // Shown with the send button still available; resubmission only
      // happens when the participant clicks again.
      this.showError(err);
    } finally {
      this.busy = false;
    }
    await this.refreshList();
  }

  async importFile(file: Blob, name: string): Promise<void> {
    this.clearMessages();
    try {
      const summary = await this.api.importFile(file, name);
      this.notice = `imported chat ${summary.chat_label}`;
    } catch (err) {
      this.showError(err);
    }
    await this.refreshList();
  }

  private detailLocked(): boolean {
    if (!this.detail) return true;
    const summary = this.chats.find((c) => c.chat_id === this.detail?.chat_id);
    return summary?.state === "submitted";
  }

  render(): string {
    const banners =
      (this.error ? errorBanner(this.error, this.errorRetryAction ?? undefined) : "") +
      (this.notice ? noticeBanner(this.notice) : "");
    if (this.route === "detail" && this.detail) {
      const pending = this.detailLocked() ? null : this.pendingDelete;
      return banners + chatDetailView(this.detail, pending);
    }
    if (this.route === "preview" && this.previewText !== null && this.detail) {
      return (
        banners +
        previewView(
          this.detail.chat_id,
          this.previewText,
          this.researcherChecked,
          this.canSubmit,
          this.receipt,
        )
      );
    }
    return banners + chatListView(this.chats);
  }
}
