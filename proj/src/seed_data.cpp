#include "seed_data.hpp"

namespace logicscan {

const char* const kSeedCategoryMapJson = R"JSON({
  "stopwords": [
    "token", "coin", "erc20", "erc721", "erc1155", "eth", "weth", "btc",
    "inu", "finance", "protocol", "official", "smart", "contract", "main",
    "test", "new", "old", "pro", "plus"
  ],
  "categories": {
    "pool": "Lending",
    "lend": "Lending",
    "lending": "Lending",
    "loan": "Lending",
    "borrow": "Lending",
    "comptroller": "Lending",
    "swap": "Exchange",
    "exchange": "Exchange",
    "router": "Exchange",
    "amm": "Exchange",
    "dex": "Exchange",
    "pair": "Exchange",
    "farm": "Yield",
    "yield": "Yield",
    "harvest": "Yield",
    "chef": "Yield",
    "vault": "Vault",
    "strategy": "Vault",
    "stake": "Staking",
    "staking": "Staking",
    "nft": "NFT",
    "collectible": "NFT",
    "dao": "Governance",
    "governance": "Governance",
    "governor": "Governance",
    "vote": "Governance",
    "voting": "Governance",
    "timelock": "Governance",
    "bridge": "Bridge",
    "oracle": "Oracle",
    "feed": "Oracle",
    "auction": "Marketplace",
    "market": "Marketplace",
    "marketplace": "Marketplace",
    "lottery": "Gaming",
    "game": "Gaming",
    "insurance": "Insurance",
    "cover": "Insurance",
    "crowdsale": "Crowdsale",
    "presale": "Crowdsale",
    "ico": "Crowdsale",
    "airdrop": "Distribution",
    "vesting": "Vesting",
    "locker": "Vesting",
    "wallet": "Wallet",
    "multisig": "Wallet"
  }
})JSON";

const char* const kSeedDictionaryJson = R"JSON({
  "canonical": {
    "caller_is_owner": ["only_owner", "owner_check", "is_owner", "onlyowner", "sender_is_owner", "msg_sender_is_owner", "caller_owner"],
    "caller_not_owner": ["not_owner", "sender_not_owner"],
    "caller_is_admin": ["only_admin", "admin_check", "is_admin", "has_admin_role", "admin_only"],
    "caller_is_authorized": ["only_authorized", "authorized", "auth_check", "caller_authorized", "has_permission", "access_allowed"],
    "caller_is_whitelisted": ["whitelisted", "in_whitelist", "whitelist_check", "caller_whitelisted"],
    "sender_not_excluded": ["not_excluded", "sender_not_blacklisted", "not_blacklisted"],
    "sender_excluded": ["excluded", "sender_blacklisted", "blacklisted"],
    "balance_ge_amount": ["sufficient_balance", "balance_sufficient", "enough_balance", "balance_ge_value", "user_balance_ge_amount", "balance_covers_amount", "balance_enough"],
    "balance_lt_amount": ["insufficient_balance", "balance_insufficient"],
    "amount_gt_zero": ["amount_positive", "nonzero_amount", "positive_amount", "value_gt_zero", "amount_nonzero", "amount_not_zero"],
    "amount_le_max": ["amount_below_max", "amount_within_limit", "within_max_amount", "amount_le_limit"],
    "amount_ge_min": ["amount_above_min", "min_amount_met", "amount_ge_minimum"],
    "address_not_zero": ["nonzero_address", "valid_address", "recipient_not_zero", "to_not_zero", "not_zero_address", "zero_address_check"],
    "allowance_ge_amount": ["sufficient_allowance", "allowance_sufficient", "approved_amount_ge_value", "enough_allowance"],
    "allowance_lt_amount": ["insufficient_allowance", "allowance_insufficient"],
    "not_paused": ["when_not_paused", "contract_not_paused", "unpaused", "paused_is_false"],
    "paused": ["contract_paused", "when_paused", "is_paused"],
    "deadline_not_passed": ["before_deadline", "not_expired", "deadline_ok", "within_deadline", "deadline_ge_now"],
    "deadline_passed": ["after_deadline", "expired", "past_deadline"],
    "health_factor_ge_threshold": ["hf_ge_threshold", "health_factor_above_threshold", "health_factor_ok", "hf_above_min", "health_factor_above_min", "position_health_ok", "health_factor_check"],
    "position_healthy": ["account_healthy", "position_solvent"],
    "position_liquidatable": ["account_liquidatable", "undercollateralized", "position_unhealthy"],
    "collateral_sufficient": ["enough_collateral", "collateral_ge_required", "collateral_covers_debt", "sufficient_collateral"],
    "collateral_insufficient": ["not_enough_collateral"],
    "supply_below_cap": ["under_max_supply", "supply_le_cap", "mint_within_cap", "total_supply_below_cap", "cap_not_reached"],
    "supply_above_cap": ["cap_exceeded", "supply_over_cap"],
    "price_above_floor": ["price_ge_floor"],
    "price_below_floor": ["price_under_floor"],
    "price_within_bounds": ["price_in_range", "valid_price", "price_bounded"],
    "oracle_price_fresh": ["price_not_stale", "fresh_price", "oracle_updated", "price_recent"],
    "slippage_within_tolerance": ["min_output_met", "amount_out_ge_min", "output_ge_min", "slippage_ok", "min_return_met"],
    "is_initialized": ["initialized", "init_done"],
    "not_initialized": ["uninitialized", "init_not_done", "not_yet_initialized"],
    "reentrancy_guard_clear": ["non_reentrant", "not_entered", "no_reentrancy", "reentrancy_check"],
    "sale_active": ["sale_open", "sale_started", "sale_is_active", "sale_live"],
    "sale_ended": ["sale_closed", "sale_over", "sale_finished"],
    "market_open": ["market_active", "trading_open"],
    "market_closed": ["market_inactive", "trading_closed"],
    "proposal_active": ["voting_open", "proposal_open", "voting_active"],
    "proposal_expired": ["voting_closed", "proposal_closed", "voting_over"],
    "transfers_enabled": ["transfer_allowed", "trading_enabled", "transfers_allowed"],
    "transfers_disabled": ["trading_disabled", "transfers_blocked"],
    "caller_is_eoa": ["only_eoa", "not_contract", "no_contract_caller"],
    "signature_valid": ["valid_signature", "sig_verified", "signature_verified", "valid_sig"],
    "nonce_valid": ["nonce_not_used", "valid_nonce", "nonce_unused"],
    "merkle_proof_valid": ["valid_proof", "proof_verified", "valid_merkle_proof"],
    "token_exists": ["token_minted", "valid_token_id", "token_id_exists"],
    "caller_is_token_owner": ["owns_token", "token_owner_check", "sender_owns_token"],
    "caller_approved_or_owner": ["approved_or_owner", "is_approved_or_owner"],
    "repay_le_debt": ["repay_amount_le_debt", "repayment_within_debt", "repay_within_borrowed"],
    "reserve_sufficient": ["enough_reserve", "reserve_ge_amount", "sufficient_reserves", "reserves_ge_amount", "enough_reserves"],
    "fee_within_limit": ["fee_le_max", "valid_fee", "fee_bounded"],
    "shares_gt_zero": ["nonzero_shares", "shares_positive", "shares_not_zero"],
    "deposit_within_cap": ["deposit_le_cap", "under_deposit_limit", "deposit_cap_check"],
    "withdrawal_within_limit": ["withdraw_le_limit", "withdrawal_le_limit", "within_withdraw_limit"],
    "lock_period_over": ["unlock_time_reached", "lock_expired", "vesting_complete", "tokens_unlocked"],
    "caller_is_minter": ["only_minter", "minter_role", "has_minter_role"],
    "caller_is_pool": ["only_pool", "from_pool", "pool_only"],
    "caller_is_vault": ["only_vault", "vault_only"],
    "array_lengths_match": ["same_length", "lengths_equal", "length_match", "equal_lengths"],
    "payment_sufficient": ["value_matches_price", "msg_value_ge_price", "exact_payment", "enough_payment"],
    "contract_balance_sufficient": ["contract_has_balance", "pool_balance_sufficient"]
  },
  "antonyms": [
    ["not_paused", "paused"],
    ["deadline_not_passed", "deadline_passed"],
    ["sender_not_excluded", "sender_excluded"],
    ["balance_ge_amount", "balance_lt_amount"],
    ["allowance_ge_amount", "allowance_lt_amount"],
    ["sale_active", "sale_ended"],
    ["is_initialized", "not_initialized"],
    ["price_above_floor", "price_below_floor"],
    ["supply_below_cap", "supply_above_cap"],
    ["caller_is_owner", "caller_not_owner"],
    ["market_open", "market_closed"],
    ["transfers_enabled", "transfers_disabled"],
    ["proposal_active", "proposal_expired"],
    ["collateral_sufficient", "collateral_insufficient"],
    ["position_healthy", "position_liquidatable"]
  ]
})JSON";

}  // namespace logicscan
